"""A concrete point model realizing the translation action at finite depth.

Points are finite tapes over the alphabet {1..p}, p = n - m + 1 (so n >= m
is required).  A Y-kind point is a bare tape; an X-kind point carries a
branch label in {1..m} in front of the tape.  Two letter-wise maps act:

* the b-family (m maps): b_j attaches branch j to a Y point;
* the a-family (n maps): a_i with i <= m-1 attaches branch i, while
  a_{m-1+k} (1 <= k <= p) attaches branch m and pushes the symbol k onto
  the tape.

Both families are injections from Y points onto disjoint pieces covering the
X points, which is exactly the branching the C1/C2 patterns encode: the
membership set gamma(pt) = {g : theta_point(g^-1, pt) is defined} is a valid
configuration, rooted C2 for Y points and C1 for X points.

The a-family index bookkeeping is asymmetric by necessity: only m branch
labels exist, so the n a-maps reuse branch m and disambiguate through the
pushed tape symbol.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .config import Configuration
from .freegroup import (
    FAMILY_A,
    IDENTITY,
    Letter,
    Signature,
    SignatureError,
    Word,
    check_word,
    invert,
    letters,
)


class TapeExhaustedError(RuntimeError):
    """Raised when an inverse map needs a tape symbol beyond the capacity."""


@dataclass(frozen=True)
class ModelPoint:
    sig: Signature
    kind: str  # "Y" or "X"
    tape: tuple[int, ...]
    branch: int | None = None

    def __post_init__(self) -> None:
        if self.sig.n < self.sig.m:
            raise SignatureError(f"model needs n >= m, got ({self.sig.n}, {self.sig.m})")
        p = tape_alphabet_size(self.sig)
        if self.kind not in ("Y", "X"):
            raise ValueError(f"kind must be 'Y' or 'X', got {self.kind!r}")
        if self.kind == "Y" and self.branch is not None:
            raise ValueError("Y points carry no branch")
        if self.kind == "X" and not (self.branch and 1 <= self.branch <= self.sig.m):
            raise ValueError(f"X points need a branch in 1..{self.sig.m}")
        if any(not 1 <= s <= p for s in self.tape):
            raise ValueError(f"tape symbols must lie in 1..{p}")

    @property
    def capacity(self) -> int:
        return len(self.tape)


def tape_alphabet_size(sig: Signature) -> int:
    if sig.n < sig.m:
        raise SignatureError(f"model needs n >= m, got ({sig.n}, {sig.m})")
    return sig.n - sig.m + 1


def points_agree(p: ModelPoint, q: ModelPoint) -> bool:
    """Equality up to the shorter tape: same kind, branch, and common prefix."""
    if p.sig != q.sig or p.kind != q.kind or p.branch != q.branch:
        return False
    k = min(len(p.tape), len(q.tape))
    return p.tape[:k] == q.tape[:k]


def h_map(j: int, pt: ModelPoint) -> ModelPoint | None:
    """Branch attach: send a Y point to branch j.  Defined for 1 <= j <= m."""
    if not 1 <= j <= pt.sig.m:
        raise ValueError(f"h index must lie in 1..{pt.sig.m}")
    if pt.kind != "Y":
        return None
    return ModelPoint(pt.sig, "X", pt.tape, j)


def h_inv(j: int, pt: ModelPoint) -> ModelPoint | None:
    if not 1 <= j <= pt.sig.m:
        raise ValueError(f"h index must lie in 1..{pt.sig.m}")
    if pt.kind != "X" or pt.branch != j:
        return None
    return ModelPoint(pt.sig, "Y", pt.tape)


def v_map(i: int, pt: ModelPoint) -> ModelPoint | None:
    """The asymmetric family: attach branch i for i <= m-1; for i = m-1+k
    attach branch m and push the symbol k.  Defined for 1 <= i <= n."""
    sig = pt.sig
    if not 1 <= i <= sig.n:
        raise ValueError(f"v index must lie in 1..{sig.n}")
    if pt.kind != "Y":
        return None
    if i <= sig.m - 1:
        return ModelPoint(sig, "X", pt.tape, i)
    k = i - sig.m + 1
    return ModelPoint(sig, "X", (k,) + pt.tape, sig.m)


def v_inv(i: int, pt: ModelPoint) -> ModelPoint | None:
    sig = pt.sig
    if not 1 <= i <= sig.n:
        raise ValueError(f"v index must lie in 1..{sig.n}")
    if pt.kind != "X":
        return None
    if i <= sig.m - 1:
        return ModelPoint(sig, "Y", pt.tape) if pt.branch == i else None
    if pt.branch != sig.m:
        return None
    if not pt.tape:
        raise TapeExhaustedError("inverse needs the head tape symbol but the tape is empty")
    k = i - sig.m + 1
    if pt.tape[0] != k:
        return None
    return ModelPoint(sig, "Y", pt.tape[1:])


def _apply_letter(letter: Letter, pt: ModelPoint) -> ModelPoint | None:
    # The a-letters need n maps and the b-letters m maps, so the a-family is
    # wired to the asymmetric maps and the b-family to plain branch attach.
    if letter.family == FAMILY_A:
        return v_map(letter.index, pt) if letter.sign > 0 else v_inv(letter.index, pt)
    return h_map(letter.index, pt) if letter.sign > 0 else h_inv(letter.index, pt)


def theta_point(g: Word, pt: ModelPoint) -> ModelPoint | None:
    """Apply a reduced word letter-wise, rightmost letter first.

    Returns None when any step leaves its domain; raises TapeExhaustedError
    when a step would need tape symbols beyond the capacity.
    """
    check_word(g, pt.sig)
    current: ModelPoint | None = pt
    for letter in reversed(g):
        current = _apply_letter(letter, current)
        if current is None:
            return None
    return current


def fixed_point(sig: Signature, capacity: int = 8) -> ModelPoint:
    """The all-ones Y point, fixed by b_1^-1 a_1 and b_2^-1 a_2 (needs m >= 2)."""
    if sig.m < 2:
        raise SignatureError(f"the fixed point construction needs m >= 2, got m = {sig.m}")
    if capacity < 0:
        raise ValueError("capacity must be >= 0")
    return ModelPoint(sig, "Y", (1,) * capacity)


def gamma(pt: ModelPoint, depth: int) -> Configuration:
    """The membership configuration of a point at the given depth.

    g is a member iff theta_point(g^-1, pt) is defined.  Members are found
    by growing the tree from the identity (membership is prefix-closed), so
    only actual members are visited.  Requires tape capacity >= depth.
    """
    if depth < 0:
        raise ValueError("depth must be >= 0")
    if pt.capacity < depth:
        raise TapeExhaustedError(f"gamma at depth {depth} needs tape capacity >= {depth}")
    gens = letters(pt.sig)
    members: dict[Word, ModelPoint] = {IDENTITY: pt}
    frontier: list[Word] = [IDENTITY]
    for _ in range(depth):
        nxt: list[Word] = []
        for w in frontier:
            base = members[w]
            last = w[-1] if w else None
            for letter in gens:
                if last is not None and last == letter.inverse():
                    continue  # would shorten the word
                # theta_point((w x)^-1) = theta(x^-1) after theta(w^-1).
                image = _apply_letter(letter.inverse(), base)
                if image is not None:
                    child = w + (letter,)
                    members[child] = image
                    nxt.append(child)
        frontier = nxt
    return Configuration(pt.sig, depth, frozenset(members))


def to_json_obj(pt: ModelPoint) -> dict:
    obj = {"n": pt.sig.n, "m": pt.sig.m, "kind": pt.kind, "tape": list(pt.tape)}
    if pt.kind == "X":
        obj["branch"] = pt.branch
    return obj


def to_json(pt: ModelPoint) -> str:
    return json.dumps(to_json_obj(pt), indent=2) + "\n"


def from_json_obj(obj: dict) -> ModelPoint:
    sig = Signature(int(obj["n"]), int(obj["m"]))
    branch = obj.get("branch")
    return ModelPoint(sig, obj["kind"], tuple(int(s) for s in obj["tape"]), branch)


def from_json(text: str) -> ModelPoint:
    return from_json_obj(json.loads(text))
