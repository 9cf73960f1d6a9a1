"""Bounded-counter oracle: solve an integer game exactly on a capped value
grid and bracket the unbounded verdict between two cap treatments.

* saturate: increments clamp at the cap.  This only weakens Player 0, so a
  Player-0 win at any cap is sound for the unbounded game.  Under VASS
  semantics this argument needs the game to be single-sided (higher values
  must never help Player 1).
* overflow-wins-p0: crossing the cap ends the play in an even sink, i.e. the
  overflow is resolved in Player 0's favor.  This only strengthens Player 0,
  so a Player-1 win at any cap is sound.  An energy underflow ends in an odd
  sink in both modes.
"""
from __future__ import annotations

from typing import Dict, Optional, Tuple

from .core import DEC, IntegerGame, PartialConfig, is_single_sided
from .parity import FiniteParityGame, solve_parity
from .semantics import ENERGY, VASS

SATURATE = "saturate"
OVERFLOW_WINS_P0 = "overflow-wins-p0"

WIN0 = "win0"
WIN1 = "win1"
UNKNOWN = "unknown"

_OVER = ("__overflow",)
_UNDER = ("__underflow",)


def solve_capped(
    game: IntegerGame,
    semantics: str,
    cap: int,
    mode: str,
) -> Dict[Tuple[str, Tuple[int, ...]], int]:
    """Winner (0 or 1) of every configuration with all values in [0, cap].

    Configurations are keyed by (state, value vector in game.counters order).
    A side with no enabled move loses.
    """
    if cap < 0:
        raise ValueError("cap must be nonnegative")
    if mode not in (SATURATE, OVERFLOW_WINS_P0):
        raise ValueError("unknown cap mode %r" % mode)
    if semantics not in (ENERGY, VASS):
        raise ValueError("unknown semantics %r" % semantics)
    if semantics == VASS and mode == SATURATE and not is_single_sided(game):
        raise ValueError("saturate mode under VASS semantics needs a single-sided game")

    counters = game.counters
    k = len(counters)
    cidx = {c: i for i, c in enumerate(counters)}

    vertices = [(_OVER, 0, 0), (_UNDER, 0, 1)]
    edges = [(_OVER, _OVER), (_UNDER, _UNDER)]
    stuck_sink = {}  # owner -> sink vertex, for configs with no enabled move

    def vectors(i: int):
        if i == 0:
            yield ()
            return
        for rest in vectors(i - 1):
            for v in range(cap + 1):
                yield rest + (v,)

    grid = list(vectors(k))
    for s in game.states:
        for vec in grid:
            vertices.append(((s.name, vec), s.owner, s.color))
    for s in game.states:
        outs = game.out(s.name)
        for vec in grid:
            src = (s.name, vec)
            added = False
            for t in outs:
                if t.op.counter is None:
                    edges.append((src, (t.target, vec)))
                    added = True
                    continue
                i = cidx[t.op.counter]
                nv = vec[i] + t.op.delta
                if nv < 0:
                    if semantics == VASS:
                        continue  # disabled
                    edges.append((src, _UNDER))
                    added = True
                    continue
                if nv > cap:
                    if mode == SATURATE:
                        nv = cap
                        edges.append((src, (t.target, vec[:i] + (nv,) + vec[i + 1:])))
                    else:
                        edges.append((src, _OVER))
                    added = True
                    continue
                edges.append((src, (t.target, vec[:i] + (nv,) + vec[i + 1:])))
                added = True
            if not added:
                # stuck: the owner loses
                if s.owner not in stuck_sink:
                    sink = ("__stuck", s.owner)
                    stuck_sink[s.owner] = sink
                    vertices.append((sink, 0, 1 if s.owner == 0 else 0))
                    edges.append((sink, sink))
                edges.append((src, stuck_sink[s.owner]))

    fg = FiniteParityGame(tuple(vertices), tuple(edges))
    w0, _, _, _ = solve_parity(fg)
    result: Dict[Tuple[str, Tuple[int, ...]], int] = {}
    for s in game.states:
        for vec in grid:
            result[(s.name, vec)] = 0 if (s.name, vec) in w0 else 1
    return result


def bracket_decide(
    game: IntegerGame,
    semantics: str,
    gamma: PartialConfig,
    max_cap: int = 64,
) -> str:
    """Decide the winner at a concrete configuration by doubling caps.

    Returns "win0" when the saturating cap game is won by Player 0 (sound),
    "win1" when the overflow-favors-Player-0 cap game is won by Player 1
    (sound), and "unknown" when neither happens up to max_cap."""
    if gamma.dom != frozenset(game.counters):
        raise ValueError("bracket_decide needs a concrete configuration")
    vec = tuple(gamma.valuation[c] for c in game.counters)
    if vec and max(vec) >= max_cap:
        return UNKNOWN
    cap = max([1] + [v for v in vec]) + 1 if vec else 1
    saturate_ok = not (semantics == VASS and not is_single_sided(game))
    while True:
        cap = min(cap, max_cap)
        if saturate_ok:
            if solve_capped(game, semantics, cap, SATURATE)[(gamma.state, vec)] == 0:
                return WIN0
        if solve_capped(game, semantics, cap, OVERFLOW_WINS_P0)[(gamma.state, vec)] == 1:
            return WIN1
        if cap >= max_cap:
            return UNKNOWN
        cap *= 2
