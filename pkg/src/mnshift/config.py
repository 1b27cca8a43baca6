"""Finite-depth configurations: subsets of the word ball with local branching patterns.

A configuration holds the identity, is closed under prefixes (equivalently,
geodesically convex in the tree), and at every interior vertex follows one of
two branching patterns:

* C1 -- exactly one a-neighbor g*a_i and one b-neighbor g*b_j are present,
  and no inverse neighbors g*a_i^-1, g*b_j^-1 are present;
* C2 -- no positive neighbors are present, and all inverse neighbors are.

Vertices at the boundary depth have neighbors outside the ball and are
classified Undetermined; validation does not constrain them.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterator

from .freegroup import (
    IDENTITY,
    FAMILY_A,
    FAMILY_B,
    Letter,
    Signature,
    SignatureError,
    Word,
    check_word,
    invert,
    multiply,
    parse_word,
    positive_letters,
    word_key,
    word_str,
)


class DomainError(ValueError):
    """Raised when a translation is requested outside its domain."""


class DepthError(ValueError):
    """Raised when an operation needs more depth than a configuration has."""


class ResourceCutoffError(RuntimeError):
    """Raised when an enumeration would exceed its configured size bound."""


@dataclass(frozen=True)
class C1:
    """Pattern with one positive a-witness and one positive b-witness."""

    a_index: int
    b_index: int


@dataclass(frozen=True)
class C2:
    """Pattern with all inverse neighbors present and no positive ones."""


@dataclass(frozen=True)
class Undetermined:
    """Pattern of a boundary vertex; not enough depth to classify."""


Pattern = C1 | C2 | Undetermined


@dataclass(frozen=True)
class Configuration:
    sig: Signature
    depth: int
    members: frozenset[Word]

    def __post_init__(self) -> None:
        if self.depth < 0:
            raise ValueError("depth must be >= 0")

    def sorted_members(self) -> list[Word]:
        return sorted(self.members, key=word_key)


@dataclass(frozen=True)
class ValidationReport:
    violations: tuple[tuple[Word, str], ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        if self.ok:
            return "valid"
        return "; ".join(f"{word_str(w)}: {why}" for w, why in self.violations)


def _neighbor_members(cfg: Configuration, g: Word) -> tuple[list[int], list[int], list[int], list[int]]:
    """Indices i/j of positive and inverse neighbors of g present in cfg."""
    pos_a, pos_b, inv_a, inv_b = [], [], [], []
    members = cfg.members
    for letter in positive_letters(cfg.sig):
        bucket = pos_a if letter.family == FAMILY_A else pos_b
        if multiply(g, (letter,)) in members:
            bucket.append(letter.index)
        bucket = inv_a if letter.family == FAMILY_A else inv_b
        if multiply(g, (letter.inverse(),)) in members:
            bucket.append(letter.index)
    return pos_a, pos_b, inv_a, inv_b


def classify_pattern(cfg: Configuration, g: Word) -> Pattern | None:
    """Classify the branching pattern at a member vertex.

    Returns Undetermined for boundary vertices, and None when the
    neighborhood matches neither pattern (an invalid configuration).
    """
    if g not in cfg.members:
        raise ValueError(f"{word_str(g)} is not a member")
    if len(g) >= cfg.depth:
        return Undetermined()
    pos_a, pos_b, inv_a, inv_b = _neighbor_members(cfg, g)
    if not pos_a and not pos_b and len(inv_a) == cfg.sig.n and len(inv_b) == cfg.sig.m:
        return C2()
    if len(pos_a) == 1 and len(pos_b) == 1 and not inv_a and not inv_b:
        return C1(pos_a[0], pos_b[0])
    return None


def validate(cfg: Configuration) -> ValidationReport:
    """Check identity membership, prefix closure, and interior patterns."""
    violations: list[tuple[Word, str]] = []
    if IDENTITY not in cfg.members:
        violations.append((IDENTITY, "MissingIdentity"))
    for g in cfg.sorted_members():
        try:
            check_word(g, cfg.sig)
        except SignatureError as exc:
            violations.append((g, f"BadWord: {exc}"))
            continue
        if len(g) > cfg.depth:
            violations.append((g, f"MemberBeyondDepth: length {len(g)} > {cfg.depth}"))
            continue
        if g and g[:-1] not in cfg.members:
            violations.append((g, "NotPrefixClosed"))
            continue
        if len(g) < cfg.depth and classify_pattern(cfg, g) is None:
            pos_a, pos_b, inv_a, inv_b = _neighbor_members(cfg, g)
            detail = f"positives a{pos_a} b{pos_b}, inverses a{inv_a} b{inv_b}"
            violations.append((g, f"PatternViolation: {detail}"))
    return ValidationReport(tuple(violations))


def is_convex(cfg: Configuration) -> bool:
    """Geodesic convexity in the tree: the path between any two members stays inside."""
    for g in cfg.members:
        for h in cfg.members:
            step = g
            for letter in multiply(invert(g), h):
                step = multiply(step, (letter,))
                if step not in cfg.members:
                    return False
    return True


def in_domain(g: Word, cfg: Configuration) -> bool:
    """Whether cfg lies in the domain of translation by g (g^-1 is a member)."""
    return invert(g) in cfg.members


def translate(g: Word, cfg: Configuration) -> Configuration:
    """Left-translate by g, keeping the part visible at the reduced depth.

    The result has depth cfg.depth - |g| and members {g*h : h member,
    |g*h| <= new depth}.  Requires g^-1 to be a member.
    """
    check_word(g, cfg.sig)
    if len(g) > cfg.depth:
        raise DepthError(f"|g| = {len(g)} exceeds configuration depth {cfg.depth}")
    if not in_domain(g, cfg):
        raise DomainError(f"{word_str(invert(g))} is not a member; translation undefined")
    new_depth = cfg.depth - len(g)
    members = frozenset(w for w in (multiply(g, h) for h in cfg.members) if len(w) <= new_depth)
    return Configuration(cfg.sig, new_depth, members)


def truncate(cfg: Configuration, depth: int) -> Configuration:
    """Restrict to the sub-ball of the given (smaller or equal) depth."""
    if depth > cfg.depth:
        raise DepthError(f"cannot truncate depth {cfg.depth} to larger depth {depth}")
    if depth == cfg.depth:
        return cfg
    return Configuration(cfg.sig, depth, frozenset(w for w in cfg.members if len(w) <= depth))


def equal_at_depth(c1: Configuration, c2: Configuration, depth: int) -> bool:
    """Whether both configurations have identical members up to the given depth."""
    if c1.sig != c2.sig:
        raise SignatureError("configurations have different signatures")
    if depth > c1.depth or depth > c2.depth:
        raise DepthError(f"comparison depth {depth} exceeds an available depth")
    left = {w for w in c1.members if len(w) <= depth}
    right = {w for w in c2.members if len(w) <= depth}
    return left == right


def enumerate_omega(
    sig: Signature,
    depth: int,
    root_pattern: str | None = None,
    max_count: int = 1_000_000,
) -> list[Configuration]:
    """All configurations of the given depth, by exhaustive tree growth.

    Branching choices exist only at the identity (pattern and witnesses) and
    at vertices ending in an inverse letter (the new positive witness); all
    other vertices extend deterministically.  `root_pattern` may be "C1" or
    "C2" to restrict the pattern at the identity.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    if root_pattern not in (None, "C1", "C2"):
        raise ValueError(f"root_pattern must be 'C1', 'C2' or None, got {root_pattern!r}")
    pos = positive_letters(sig)
    a_letters = [x for x in pos if x.family == FAMILY_A]
    b_letters = [x for x in pos if x.family == FAMILY_B]

    results: list[Configuration] = []
    members: set[Word] = {IDENTITY}
    queue: list[Word] = [IDENTITY]

    def emit() -> None:
        if len(results) >= max_count:
            raise ResourceCutoffError(f"more than {max_count} configurations at depth {depth}")
        results.append(Configuration(sig, depth, frozenset(members)))

    def grow(idx: int) -> None:
        if idx == len(queue):
            emit()
            return
        g = queue[idx]
        if len(g) >= depth:
            grow(idx + 1)
            return
        last = g[-1] if g else None
        if last is None:
            # Identity: either pattern is possible.
            if root_pattern != "C1":
                attach(idx, g, [x.inverse() for x in pos])
            if root_pattern != "C2":
                for a in a_letters:
                    for b in b_letters:
                        attach(idx, g, [a, b])
        elif last.sign > 0:
            # Ends in a positive letter: forced C2; the parent is the one
            # inverse neighbor already present.
            attach(idx, g, [x.inverse() for x in pos if x != last])
        elif last.family == FAMILY_A:
            # Ends in a_i^-1: C1 with the a-witness being the parent; choose b.
            for b in b_letters:
                attach(idx, g, [b])
        else:
            # Ends in b_j^-1: C1 with the b-witness being the parent; choose a.
            for a in a_letters:
                attach(idx, g, [a])

    def attach(idx: int, g: Word, new_letters: list[Letter]) -> None:
        children = [g + (letter,) for letter in new_letters]
        members.update(children)
        queue.extend(children)
        grow(idx + 1)
        del queue[len(queue) - len(children):]
        members.difference_update(children)

    grow(0)
    return results


def to_json_obj(cfg: Configuration) -> dict:
    return {
        "n": cfg.sig.n,
        "m": cfg.sig.m,
        "depth": cfg.depth,
        "members": [word_str(w) for w in cfg.sorted_members()],
    }


def to_json(cfg: Configuration) -> str:
    return json.dumps(to_json_obj(cfg), indent=2) + "\n"


def from_json_obj(obj: dict) -> Configuration:
    sig = Signature(int(obj["n"]), int(obj["m"]))
    members = frozenset(parse_word(text, sig) for text in obj["members"])
    return Configuration(sig, int(obj["depth"]), members)


def from_json(text: str) -> Configuration:
    return from_json_obj(json.loads(text))


def to_dot(cfg: Configuration) -> str:
    """Render the ball of the configuration's depth; members filled, others hollow."""
    from .freegroup import ball  # local import to keep module load light

    lines = ["graph configuration {", '  node [shape=circle fontsize=10];']
    for w in ball(cfg.sig, cfg.depth):
        name = word_str(w)
        style = "filled" if w in cfg.members else "solid"
        lines.append(f'  "{name}" [style={style}];')
        if w:
            lines.append(f'  "{word_str(w[:-1])}" -- "{name}" [label="{w[-1]}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"
