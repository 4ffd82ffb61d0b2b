"""Decision procedure for intuitionistic entailment in the ⊤/∧/⇒ fragment.

`prove` is a contraction-free goal-directed search in the G4ip style:
the left-implication rule splits on the shape of the antecedent, which
makes the calculus terminating without loop checks. `kripke_check` is a
brute-force search over small rooted Kripke models used as an
independent sanity oracle.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterable

from .structure import TOP, AtomF, Conj, Formula, Impl, TopF, conj


class SequentError(ValueError):
    pass


@dataclass(frozen=True)
class Sequent:
    hypotheses: tuple[Formula, ...]
    goal: Formula


def _flatten_hyps(hyps: Iterable[Formula]) -> tuple[Formula, ...]:
    out: list[Formula] = []
    for h in hyps:
        if isinstance(h, TopF):
            continue
        if isinstance(h, Conj):
            out.extend(h.parts)
        else:
            out.append(h)
    return tuple(sorted(out, key=str))


def prove(s: Sequent) -> bool:
    return _prove(_flatten_hyps(s.hypotheses), s.goal)


@lru_cache(maxsize=None)
def _prove(hyps: tuple[Formula, ...], goal: Formula) -> bool:
    # Right rules first: they are invertible.
    if isinstance(goal, TopF):
        return True
    if isinstance(goal, Conj):
        return all(_prove(hyps, g) for g in goal.parts)
    if isinstance(goal, Impl):
        return _prove(_flatten_hyps(hyps + (goal.lhs,)), goal.rhs)
    # goal is an atom
    if goal in hyps:
        return True
    rest = list(hyps)
    for i, h in enumerate(hyps):
        if not isinstance(h, Impl):
            continue
        others = tuple(rest[:i] + rest[i + 1:])
        a, b = h.lhs, h.rhs
        if isinstance(a, TopF):
            if _prove(_flatten_hyps(others + (b,)), goal):
                return True
        elif isinstance(a, AtomF):
            if a in others and _prove(_flatten_hyps(others + (b,)), goal):
                return True
        elif isinstance(a, Conj):
            curried = b
            for part in reversed(a.parts):
                curried = Impl(part, curried)
            if _prove(_flatten_hyps(others + (curried,)), goal):
                return True
        elif isinstance(a, Impl):
            # (C ⇒ D) ⇒ B: prove C ⇒ D under D ⇒ B, then continue with B.
            if _prove(
                _flatten_hyps(others + (Impl(a.rhs, b),)), a
            ) and _prove(_flatten_hyps(others + (b,)), goal):
                return True
    return False


def equivalent(f: Formula, g: Formula) -> bool:
    return prove(Sequent((f,), g)) and prove(Sequent((g,), f))


# -- Kripke models ----------------------------------------------------------------


def _atoms_of(f: Formula) -> frozenset[str]:
    if isinstance(f, AtomF):
        return frozenset([f.name])
    if isinstance(f, Conj):
        out: frozenset[str] = frozenset()
        for p in f.parts:
            out |= _atoms_of(p)
        return out
    if isinstance(f, Impl):
        return _atoms_of(f.lhs) | _atoms_of(f.rhs)
    return frozenset()


@lru_cache(maxsize=None)
def _frames(n: int) -> tuple[frozenset[tuple[int, int]], ...]:
    """All reflexive-transitive orders on 0..n-1 rooted at 0."""
    worlds = range(n)
    base = {(w, w) for w in worlds} | {(0, w) for w in worlds}
    optional = [(a, b) for a in worlds for b in worlds if a != b and a != 0]
    frames = []
    for bits in product([False, True], repeat=len(optional)):
        rel = frozenset(base | {p for p, keep in zip(optional, bits) if keep})
        if all((a, c) in rel for a, b in rel for b2, c in rel if b == b2):
            frames.append(rel)
    return tuple(dict.fromkeys(frames))


def _forces(rel, val, w: int, f: Formula) -> bool:
    if isinstance(f, TopF):
        return True
    if isinstance(f, AtomF):
        return w in val[f.name]
    if isinstance(f, Conj):
        return all(_forces(rel, val, w, p) for p in f.parts)
    if isinstance(f, Impl):
        return all(
            not _forces(rel, val, w2, f.lhs) or _forces(rel, val, w2, f.rhs)
            for (w1, w2) in rel
            if w1 == w
        )
    raise SequentError(f"not a fragment formula: {f!r}")


def kripke_check(s: Sequent, max_worlds: int) -> bool:
    """True iff the sequent holds at the root of every model up to the bound."""
    names: set[str] = set(_atoms_of(s.goal))
    for h in s.hypotheses:
        names |= _atoms_of(h)
    atoms = sorted(names)
    hyp = conj(s.hypotheses)
    for n in range(1, max_worlds + 1):
        for rel in _frames(n):
            upsets = _monotone_sets(rel, n)
            for choice in product(upsets, repeat=len(atoms)):
                val = dict(zip(atoms, choice))
                if _forces(rel, val, 0, hyp) and not _forces(rel, val, 0, s.goal):
                    return False
    return True


@lru_cache(maxsize=None)
def _monotone_sets(rel: frozenset[tuple[int, int]], n: int) -> tuple[frozenset[int], ...]:
    out = []
    for bits in product([False, True], repeat=n):
        sset = frozenset(w for w, b in enumerate(bits) if b)
        if all(b in sset for a in sset for (a2, b) in rel if a2 == a):
            out.append(sset)
    return tuple(out)


# -- parsing --------------------------------------------------------------------------

_SEQ_TOKEN = re.compile(r"\s*(=>|\||-|\(|\)|&|,|T\b|[a-z][a-zA-Z0-9_]*)")


def parse_formula(src: str) -> Formula:
    f, rest = _parse_formula(src, 0)
    if src[rest:].strip():
        raise SequentError(f"trailing input at {rest}: {src[rest:].strip()!r}")
    return f


def parse_sequent(src: str) -> Sequent:
    if "|-" in src:
        left, right = src.split("|-", 1)
    else:
        left, right = "", src
    goal = parse_formula(right)
    hyps: list[Formula] = []
    left = left.strip()
    if left:
        for part in _split_commas(left):
            hyps.append(parse_formula(part))
    return Sequent(tuple(hyps), goal)


def _split_commas(src: str) -> list[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(src):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch == "," and depth == 0:
            parts.append(src[start:i])
            start = i + 1
    parts.append(src[start:])
    return parts


def _parse_formula(src: str, pos: int) -> tuple[Formula, int]:
    lhs, pos = _parse_conj(src, pos)
    rest = src[pos:].lstrip()
    if rest.startswith("=>"):
        skip = len(src) - len(rest) + 2
        rhs, pos = _parse_formula(src, skip)
        return Impl(lhs, rhs), pos
    return lhs, pos


def _parse_conj(src: str, pos: int) -> tuple[Formula, int]:
    parts = []
    part, pos = _parse_atom(src, pos)
    parts.append(part)
    while True:
        rest = src[pos:].lstrip()
        if rest.startswith("&"):
            skip = len(src) - len(rest) + 1
            part, pos = _parse_atom(src, skip)
            parts.append(part)
        else:
            break
    return conj(parts) if len(parts) > 1 else parts[0], pos


def _parse_atom(src: str, pos: int) -> tuple[Formula, int]:
    rest = src[pos:].lstrip()
    offset = len(src) - len(rest)
    if not rest:
        raise SequentError(f"unexpected end of formula at {pos}")
    if rest.startswith("("):
        f, pos = _parse_formula(src, offset + 1)
        rest = src[pos:].lstrip()
        if not rest.startswith(")"):
            raise SequentError(f"expected ')' at {pos}")
        return f, len(src) - len(rest) + 1
    m = re.match(r"T(?![a-zA-Z0-9_])", rest)
    if m:
        return TOP, offset + 1
    m = re.match(r"[a-z][a-zA-Z0-9_]*", rest)
    if m:
        return AtomF(m.group(0)), offset + m.end()
    raise SequentError(f"unexpected {rest[0]!r} at {offset}")
