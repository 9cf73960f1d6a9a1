"""Pareto frontiers of minimal winning credit in single-sided VASS parity games.

The solver works by induction on the tracked counter subset C:

* C = {}: the abstract verdict per state, which for single-sided games equals
  the abstract energy parity verdict.
* C nonempty: membership of a configuration with domain C is decided by
  unfolding the game into a finite "out-game" whose states carry labels over
  C (a Karp-Miller style construction, finite by Dickson's lemma) and whose
  counters are the untracked ones; leaves are recolored losing when the label
  drops out of the smaller frontiers (coverability test against their union
  beta) and winning when a label strictly dominates one of its ancestors.
  The frontier itself is then recovered from the membership oracle with a
  Valk-Jantzen style minimization over ideal decompositions of the unknown
  region's complement.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Iterable, List, Optional, Sequence, Set, Tuple

from .core import (
    Antichain,
    Budget,
    BudgetExceeded,
    Ideal,
    IntegerGame,
    NOP_OP,
    PartialConfig,
    State,
    Transition,
    check_deadlock_free,
    complement_ideals,
    is_single_sided,
    leq,
    lt,
)
from .energy import solve_abstract_energy_parity
from .semantics import VASS, vass_step

EXTRACT_LIMIT = 4096  # safety cap when probing a single coordinate upward


def covered_by(beta: Iterable[PartialConfig], gamma: PartialConfig) -> bool:
    """Coverability of a label against the union of the smaller frontiers:
    for every tracked counter c, dropping c from gamma must land above some
    element of beta (matching state and domain)."""
    beta = list(beta)
    for c in sorted(gamma.dom):
        dropped = gamma.drop(c)
        if not any(leq(b, dropped) for b in beta):
            return False
    return True


@dataclass
class OutGame:
    """The finite unfolding used to decide one C-membership query."""

    game: IntegerGame
    root: str
    labels: Dict[str, PartialConfig]
    origin: Dict[str, Optional[str]]  # out-transition id -> original transition id


def build_out_game(
    game: IntegerGame,
    gamma: PartialConfig,
    beta: Iterable[PartialConfig],
    budget: Optional[Budget] = None,
) -> OutGame:
    """Unfold the game from gamma (domain C nonempty) into a finite game over
    the untracked counters.

    Nodes are labeled with configurations of domain C.  A node whose label is
    not covered by beta becomes a losing (color 1) leaf; a node whose label
    strictly dominates an ancestor's becomes a winning (color 0) leaf; other
    nodes expand along the VASS-enabled transitions, rewriting updates of
    tracked counters to Nop, and merge with an ancestor carrying an equal
    label instead of growing a new branch."""
    budget = budget or Budget()
    C = gamma.dom
    if not C:
        raise ValueError("build_out_game needs a nonempty tracked domain")
    beta = list(beta)
    counters_out = tuple(c for c in game.counters if c not in C)

    labels: Dict[str, PartialConfig] = {}
    color: Dict[str, int] = {}
    owner: Dict[str, int] = {}
    edges: List[Tuple[str, str, object, Optional[str]]] = []  # (src, dst, op, orig tid)
    preds: Dict[str, List[str]] = {}
    order: List[str] = []

    def new_node(label: PartialConfig) -> str:
        name = "n%d" % len(order)
        s = game.state(label.state)
        labels[name] = label
        color[name] = s.color
        owner[name] = s.owner
        preds[name] = []
        order.append(name)
        if len(order) > budget.node_budget:
            raise BudgetExceeded("out-game node budget exceeded")
        return name

    def ancestors(node: str) -> List[str]:
        """Nodes that reach node via current out-edges, node included."""
        seen = {node}
        stack = [node]
        while stack:
            v = stack.pop()
            for u in preds[v]:
                if u not in seen:
                    seen.add(u)
                    stack.append(u)
        return [n for n in order if n in seen]

    root = new_node(gamma)
    work = deque([root])
    ticks = 0
    while work:
        ticks += 1
        if ticks % 64 == 0:
            budget.check_time()
        q = work.popleft()
        lab = labels[q]
        if not covered_by(beta, lab):
            color[q] = 1
            edges.append((q, q, NOP_OP, None))
            preds[q].append(q)
            continue
        anc = ancestors(q)
        if any(lt(labels[a], lab) for a in anc):
            color[q] = 0
            edges.append((q, q, NOP_OP, None))
            preds[q].append(q)
            continue
        for t in game.out(lab.state):
            nxt = vass_step(game, lab, t.tid)
            if nxt is None:
                continue
            op_out = NOP_OP if (t.op.counter in C) else t.op
            target = None
            for a in anc:
                if labels[a] == nxt:
                    target = a
                    break
            if target is None:
                target = new_node(nxt)
                work.append(target)
            edges.append((q, target, op_out, t.tid))
            preds[target].append(q)

    states = tuple(State(n, owner[n], color[n]) for n in order)
    transitions = []
    origin: Dict[str, Optional[str]] = {}
    for i, (src, dst, op, orig) in enumerate(edges):
        tid = "e%d" % i
        transitions.append(Transition(tid, src, op, dst))  # type: ignore[arg-type]
        origin[tid] = orig
    out_game = IntegerGame(counters_out, states, tuple(transitions))
    return OutGame(out_game, root, dict(labels), origin)


class ParetoTable:
    """Memoized frontiers per tracked counter subset, with the membership
    oracle they are built from."""

    def __init__(self, game: IntegerGame, budget: Optional[Budget] = None):
        if not is_single_sided(game):
            raise ValueError("Pareto solving needs a single-sided game")
        bad = check_deadlock_free(game)
        if bad:
            raise ValueError("game may deadlock at states: %s" % ", ".join(bad))
        self.game = game
        self.budget = budget or Budget()
        self._frontiers: Dict[FrozenSet[str], Dict[str, Antichain]] = {}
        self._abstract: Optional[Dict[str, int]] = None
        self._query_cache: Dict[PartialConfig, bool] = {}
        self.out_games: List[OutGame] = []  # kept for inspection

    def abstract_verdicts(self) -> Dict[str, int]:
        if self._abstract is None:
            self._abstract = solve_abstract_energy_parity(self.game, self.budget)
        return self._abstract

    def _beta(self, C: FrozenSet[str]) -> List[PartialConfig]:
        beta: List[PartialConfig] = []
        for c in sorted(C):
            for ac in self.frontier(C - {c}).values():
                beta.extend(ac)
        return beta

    def solve_c_version(self, gamma: PartialConfig) -> bool:
        """Does Player 0 win every (equivalently, some) full instantiation of
        gamma when only the counters in dom(gamma) are tracked as hard?"""
        C = gamma.dom
        if not C:
            return self.abstract_verdicts()[gamma.state] == 0
        if gamma in self._query_cache:
            return self._query_cache[gamma]
        out = build_out_game(self.game, gamma, self._beta(C), self.budget)
        self.out_games.append(out)
        verdicts = solve_abstract_energy_parity(out.game, self.budget)
        ans = verdicts[out.root] == 0
        self._query_cache[gamma] = ans
        return ans

    def membership(self, gamma: PartialConfig, C: FrozenSet[str]) -> bool:
        """Does some C-instantiation of gamma lie in the Player-0 winning set
        with tracked counters C?  (For upward closed sets this also equals
        "gamma extends to a winning configuration".)"""
        if not gamma.dom <= C:
            raise ValueError("query domain must be inside the tracked set")
        if gamma.dom == C:
            return self.solve_c_version(gamma)
        return self.frontier(gamma.dom)[gamma.state].covers(gamma)

    def frontier(self, C: FrozenSet[str]) -> Dict[str, Antichain]:
        C = frozenset(C)
        if not C <= set(self.game.counters):
            raise ValueError("unknown counters: %s" % sorted(C - set(self.game.counters)))
        if C in self._frontiers:
            return self._frontiers[C]
        if not C:
            result = {
                q: (Antichain([PartialConfig.make(q)]) if w == 0 else Antichain())
                for q, w in self.abstract_verdicts().items()
            }
        else:
            for c in sorted(C):
                self.frontier(C - {c})  # populate the smaller tables first
            counters_order = tuple(c for c in self.game.counters if c in C)
            result = {}
            for q in self.game.state_names():
                result[q] = vj_minimize(
                    lambda g: self.membership(g, C),
                    q,
                    counters_order,
                    self.budget,
                )
        self._frontiers[C] = result
        return result


def _extract_minimal(
    query: Callable[[PartialConfig], bool],
    found: PartialConfig,
    counters_order: Sequence[str],
) -> PartialConfig:
    """Extend a positive partial query to a full domain and minimize it
    coordinatewise (one pass in counter order yields a minimal element of an
    upward closed set)."""
    gamma = found
    for c in counters_order:
        if c in gamma.dom:
            continue
        x = 0
        while not query(gamma.with_value(c, x)):
            x += 1
            if x > EXTRACT_LIMIT:
                raise BudgetExceeded("witness extraction exceeded %d on %s" % (EXTRACT_LIMIT, c))
        gamma = gamma.with_value(c, x)
    for c in counters_order:
        lo, hi = 0, gamma.get(c)
        while lo < hi:
            mid = (lo + hi) // 2
            if query(gamma.with_value(c, mid)):
                hi = mid
            else:
                lo = mid + 1
        gamma = gamma.with_value(c, lo)
    return gamma


def vj_minimize(
    query: Callable[[PartialConfig], bool],
    state: str,
    counters_order: Sequence[str],
    budget: Optional[Budget] = None,
) -> Antichain:
    """Compute the minimal elements of the upward closed set described by the
    membership oracle, Valk-Jantzen style.

    The oracle must answer, for a partial configuration, whether some full
    instantiation belongs to the set; omega coordinates of the complement
    ideals are probed as undefined counters, finite coordinates by direct
    enumeration up to the bound."""
    budget = budget or Budget()
    minima: List[PartialConfig] = []
    while True:
        budget.check_time()
        ideals = complement_ideals(sorted(minima, key=lambda g: g.items), counters_order, state)
        hit: Optional[PartialConfig] = None
        for ideal in sorted(ideals, key=lambda i: str(i.bounds)):
            finite = ideal.finite_coords
            names = [c for c, _ in finite]
            bounds = [b for _, b in finite]

            def assignments(i: int):
                if i == len(names):
                    yield ()
                    return
                for v in range(bounds[i] + 1):
                    for rest in assignments(i + 1):
                        yield (v,) + rest

            for vec in assignments(0):
                g = PartialConfig(state, tuple(zip(names, vec)))
                if query(g):
                    hit = g
                    break
            if hit is not None:
                break
        if hit is None:
            return Antichain(minima)
        new = _extract_minimal(query, hit, counters_order)
        if any(leq(m, new) or leq(new, m) for m in minima):
            raise RuntimeError("oracle is not upward closed: %s overlaps known minima" % new)
        minima.append(new)


def pareto_single_sided_vass(
    game: IntegerGame,
    counters: Iterable[str],
    budget: Optional[Budget] = None,
) -> Dict[str, Antichain]:
    """Per-state Pareto frontier of minimal credit on the tracked counters
    under VASS semantics, for a single-sided game."""
    table = ParetoTable(game, budget)
    return table.frontier(frozenset(counters))


def membership(
    game: IntegerGame,
    gamma: PartialConfig,
    counters: Iterable[str],
    table: Optional[ParetoTable] = None,
    budget: Optional[Budget] = None,
) -> bool:
    """Membership of gamma's instantiations in the Player-0 winning set with
    tracked counters C (see ParetoTable.membership)."""
    table = table or ParetoTable(game, budget)
    return table.membership(gamma, frozenset(counters))
