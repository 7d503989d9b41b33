"""Discrete velocity algebra over closed tours.

A velocity is an ordered list of node transpositions (a, b); applying one
swaps the nodes a and b wherever they occur in the tour, which keeps the
closing duplicate consistent automatically. Positions are closed tours
(first node repeated at the end).
"""
from __future__ import annotations

Transposition = tuple[int, int]
Velocity = tuple[Transposition, ...]


class UnknownNodeError(KeyError):
    """A transposition names a node that is not in the tour."""


class MismatchedNodesError(ValueError):
    """Two tours to subtract are not over the same node set."""


def add_position_velocity(tour, velocity) -> tuple[int, ...]:
    """Apply transpositions left to right; returns a new closed tour."""
    body = list(tour[:-1])
    pos = {node: i for i, node in enumerate(body)}
    for a, b in velocity:
        try:
            ia, ib = pos[a], pos[b]
        except KeyError as exc:
            raise UnknownNodeError(
                f"transposition names unknown node {exc.args[0]!r}") from exc
        body[ia], body[ib] = b, a
        pos[a], pos[b] = ib, ia
    body.append(body[0])
    return tuple(body)


def subtract_positions(x2, x1) -> Velocity:
    """Velocity v with x1 + v == x2, by left-to-right repair.

    Scans positions in order; wherever the current value differs from the
    target, swaps it into place. Deterministic, length at most n - 1.
    """
    cur = list(x1[:-1])
    target = list(x2[:-1])
    if len(cur) != len(target) or set(cur) != set(target):
        raise MismatchedNodesError("tours are not over the same node set")
    pos = {node: i for i, node in enumerate(cur)}
    out = []
    for i, want in enumerate(target):
        have = cur[i]
        if have != want:
            j = pos[want]
            cur[i], cur[j] = want, have
            pos[have], pos[want] = j, i
            out.append((have, want))
    return tuple(out)


def add_velocities(v1, v2) -> Velocity:
    """Concatenation: transpositions of v1 followed by those of v2."""
    return tuple(v1) + tuple(v2)


def scale_velocity(c: float, velocity) -> Velocity:
    """Keep the first round(c * len) transpositions (round half up);
    c = 0 gives the empty velocity, c = 1 keeps everything."""
    if not 0.0 <= c <= 1.0:
        raise ValueError(f"scale coefficient must be in [0, 1], got {c}")
    v = tuple(velocity)
    if c == 0.0:
        return ()
    k = int(c * len(v) + 0.5)
    return v[:k]
