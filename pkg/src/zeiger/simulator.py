"""Transcript simulator: reproduces the verifier's view without any solution.

The event structure of an accepting run depends only on the grid geometry
(sightline lengths and b); every revealed marker position is uniform thanks
to the shuffle preceding it.  The simulator therefore emits the same event
skeleton with positions drawn uniformly at random.
"""

from __future__ import annotations

import random

from .cards import CLUB, HEART, Transcript
from .grid import Grid, sightline
from .protocol import EVEN_STACK, ODD_STACK


def _pair_faces(q: int, pos: int) -> list[str]:
    return [ODD_STACK if j == pos else EVEN_STACK for j in range(q)]


def _club_faces(q: int, pos: int) -> list[str]:
    return [CLUB if j == pos else HEART for j in range(q)]


def _heart_faces(q: int, pos: int) -> list[str]:
    return [HEART if j == pos else CLUB for j in range(q)]


def simulate_transcript(g: Grid, seed: int) -> Transcript:
    """Simulated accepting-run transcript for ``g``; no filling involved."""
    rng = random.Random(f"sim:{seed}")
    b = g.max_value + 1
    t = Transcript()
    for c in g.coords():
        n = len(sightline(g, c))
        # one copy of the cell and one per sightline cell
        for _ in range(n + 1):
            t.shuffle("shift", 3, b)
            pos = rng.randrange(b)
            t.reveal("copy", 0, _pair_faces(b, pos))
            t.normalize(pos)
        # set size over the n sightline copies
        for i in range(1, n):
            t.shuffle("scramble", n, b)
            pos = rng.randrange(b)
            t.reveal("setsize", i, _pair_faces(b, pos))
        t.shuffle("scramble", n, b)
        # summation over b two-card stacks
        for i in range(2, b + 1):
            t.shuffle("shift", 2, i + 1)
            pos = rng.randrange(i + 1)
            t.reveal("sum", 1, _heart_faces(i + 1, pos))
            t.normalize(pos)
        # comparing: both lone clubs land in the same uniform column
        t.shuffle("scramble", 2, b + 1)
        pos = rng.randrange(b + 1)
        t.reveal("compare", 0, _club_faces(b + 1, pos))
        t.reveal("compare", 1, _club_faces(b + 1, pos))
    t.verdict(True)
    return t
