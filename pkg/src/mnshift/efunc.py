"""Partial E-functions: finite-depth presentations of the tree configurations.

E is the set of positive letters, split into the a-family Z0 and the
b-family Z1.  The color of a nonempty E-word is 1 if it ends in Z0 and 0 if
it ends in Z1; a level-i table maps each admissible word of length i to a
letter of its color class.  Level i is defined on the words x_1..x_i whose
steps avoid the previous level's value: x_{j+1} != f_j(x_1..x_j).

Two coherence conditions tie a total assignment on short words together:

* (star)      f(alpha e f(alpha e)) = e
* (star-star) f(alpha e f(alpha e) beta) = f(alpha beta)

`extend_forced` produces the unique total assignment on words of length <= r
agreeing with the tables and satisfying the conditions wherever they fit.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Callable, Iterator

from .freegroup import (
    FAMILY_A,
    IDENTITY,
    Letter,
    Signature,
    SignatureError,
    Word,
    check_letter,
    parse_word,
    positive_letters,
    word_str,
)
from .config import Configuration, ResourceCutoffError

# An E-word is a tuple of positive letters (not a reduced group word).
EWord = tuple[Letter, ...]


class EFunctionError(ValueError):
    """Raised when tables violate the partial E-function invariants."""


def color(e_word_or_letter: EWord | Letter) -> int:
    """Color of a letter or of a nonempty E-word (decided by its last letter)."""
    letter = e_word_or_letter[-1] if isinstance(e_word_or_letter, tuple) else e_word_or_letter
    return 1 if letter.family == FAMILY_A else 0


def color_class(sig: Signature, c: int) -> list[Letter]:
    """Z0 (the a-letters) for c = 0, Z1 (the b-letters) for c = 1."""
    pos = positive_letters(sig)
    if c == 0:
        return [x for x in pos if x.family == FAMILY_A]
    if c == 1:
        return [x for x in pos if x.family != FAMILY_A]
    raise ValueError(f"color must be 0 or 1, got {c}")


@dataclass(frozen=True, eq=True)
class PartialEFunction:
    """Tables for levels 1..r; tables[i-1] maps level-i words to letters."""

    sig: Signature
    tables: tuple[dict[EWord, Letter], ...]

    @property
    def r(self) -> int:
        return len(self.tables)

    def value(self, alpha: EWord) -> Letter | None:
        """Table value at alpha, or None when alpha is not an admissible slot."""
        if not 1 <= len(alpha) <= self.r:
            return None
        return self.tables[len(alpha) - 1].get(alpha)


def empty_efunction(sig: Signature) -> PartialEFunction:
    """The depth-0 function; its basic open set is everything."""
    return PartialEFunction(sig, ())


def omega(pef: PartialEFunction, level: int) -> list[EWord]:
    """Admissible level-`level` slots, in lexicographic letter order.

    Needs tables up to level-1; level may be pef.r + 1 (the slots a deeper
    table would have).
    """
    if not 1 <= level <= pef.r + 1:
        raise EFunctionError(f"level {level} needs tables up to {level - 1}, have {pef.r}")
    pos = positive_letters(pef.sig)
    slots: list[EWord] = [(x,) for x in pos]
    for lvl in range(2, level + 1):
        table = pef.tables[lvl - 2]
        slots = [alpha + (x,) for alpha in slots for x in pos if x != table[alpha]]
    return slots


def validate_efunction(pef: PartialEFunction) -> None:
    """Raise EFunctionError unless tables cover exactly the admissible slots
    with color-correct values."""
    for level in range(1, pef.r + 1):
        table = pef.tables[level - 1]
        expected = omega(pef, level)
        if set(table) != set(expected):
            raise EFunctionError(f"level {level} table domain is not the admissible slot set")
        for alpha, value in table.items():
            check_letter(value, pef.sig)
            # The value must lie in the color class opposite to the last
            # letter of alpha, and be a positive letter.
            if value.sign != 1 or value.family == alpha[-1].family:
                raise EFunctionError(
                    f"value {value} at {e_word_str(alpha)} is outside its color class"
                )


def enumerate_pef(
    sig: Signature, r: int, max_count: int = 10_000_000
) -> Iterator[PartialEFunction]:
    """Yield every partial E-function of depth r, in deterministic order.

    Slots are filled in lexicographic order, values tried in canonical letter
    order; enumeration is level-by-level (a level's slot set depends on the
    previous level's values).
    """
    if r < 0:
        raise ValueError("depth must be >= 0")
    classes = {0: color_class(sig, 0), 1: color_class(sig, 1)}
    pos = positive_letters(sig)
    count = 0

    def levels(tables: tuple[dict[EWord, Letter], ...], slots: list[EWord]) -> Iterator[PartialEFunction]:
        nonlocal count
        if len(tables) == r:
            count += 1
            if count > max_count:
                raise ResourceCutoffError(f"more than {max_count} functions at depth {r}")
            yield PartialEFunction(sig, tables)
            return
        choices = [classes[color(alpha)] for alpha in slots]

        def fill(i: int, table: dict[EWord, Letter]) -> Iterator[PartialEFunction]:
            if i == len(slots):
                next_slots = [alpha + (x,) for alpha in slots for x in pos if x != table[alpha]]
                yield from levels(tables + (dict(table),), next_slots)
                return
            for value in choices[i]:
                table[slots[i]] = value
                yield from fill(i + 1, table)
            del table[slots[i]]

        yield from fill(0, {})

    yield from levels((), [(x,) for x in pos])


@dataclass(frozen=True)
class ExtendedEFunction:
    """A total assignment on all E-words of length 1..depth."""

    sig: Signature
    depth: int
    values: dict[EWord, Letter]


def extend_forced(pef: PartialEFunction) -> ExtendedEFunction:
    """The unique coherent total extension of the tables to words of length <= r.

    On admissible slots the tables are copied.  Any other word has a first
    position where a letter repeats the value of its prefix; condition
    (star-star) forces excision of that pair, and (star) forces the terminal
    case where the repeat is at the last letter.
    """
    pos = positive_letters(pef.sig)
    values: dict[EWord, Letter] = {}
    layer: list[EWord] = [()]
    for level in range(1, pef.r + 1):
        table = pef.tables[level - 1]
        layer = [alpha + (x,) for alpha in layer for x in pos]
        for alpha in layer:
            hit = table.get(alpha)
            if hit is not None:
                values[alpha] = hit
                continue
            # First index i (0-based) with alpha[i+1] == value(alpha[:i+1]).
            i = 0
            while alpha[i + 1] != values[alpha[: i + 1]]:
                i += 1
            if i == level - 2:
                # Terminal rule: f(x_1..x_{k-1} f(x_1..x_{k-1})) = x_{k-1}.
                values[alpha] = alpha[i]
            else:
                # Excise positions i, i+1; the shorter word is already assigned.
                values[alpha] = values[alpha[:i] + alpha[i + 2 :]]
    return ExtendedEFunction(pef.sig, pef.r, values)


@dataclass(frozen=True)
class ConditionReport:
    violations: tuple[tuple[EWord, Letter, EWord], ...]
    checked: int
    skipped: int

    @property
    def ok(self) -> bool:
        return not self.violations


def check_conditions(ext: ExtendedEFunction) -> ConditionReport:
    """Check every (star) and (star-star) instance that fits within the depth.

    A violation records (alpha, e, beta); beta is empty for (star) instances.
    Instances whose longer side exceeds the depth are counted as skipped.
    """
    sig, s, values = ext.sig, ext.depth, ext.values
    pos = positive_letters(sig)
    k = len(pos)
    violations: list[tuple[EWord, Letter, EWord]] = []
    checked = 0
    skipped = 0
    words_by_len: list[list[EWord]] = [[()]]
    for _ in range(s):
        words_by_len.append([w + (x,) for w in words_by_len[-1] for x in pos])

    for la in range(0, s):  # |alpha|; f(alpha e) exists whenever la + 1 <= s
        for alpha in words_by_len[la]:
            for e in pos:
                if la + 2 > s:
                    # (star) instance exists but its long side does not fit;
                    # the same holds for every (star-star) instance over it.
                    skipped += 1 + sum(k**lb for lb in range(1, s - la + 1))
                    continue
                fe = values[alpha + (e,)]
                core = alpha + (e, fe)
                checked += 1
                if values[core] != e:
                    violations.append((alpha, e, ()))
                for lb in range(1, s - la + 1):  # f(alpha beta) needs la + lb <= s
                    if la + 2 + lb > s:
                        # (star-star) instances exist but their long sides do
                        # not fit; count them without enumerating.
                        skipped += k**lb
                        continue
                    for beta in words_by_len[lb]:
                        checked += 1
                        if values[core + beta] != values[alpha + beta]:
                            violations.append((alpha, e, beta))
    return ConditionReport(tuple(violations), checked, skipped)


def deepen(
    pef: PartialEFunction,
    new_depth: int,
    policy: str = "lex-min",
    seed: int | None = None,
) -> PartialEFunction:
    """Extend the tables to a larger depth by a deterministic fill policy.

    "lex-min" picks the first letter of the required color class for every
    new slot; "seeded" draws from a PRNG initialized with `seed`, so equal
    seeds give equal extensions.
    """
    if new_depth < pef.r:
        raise EFunctionError(f"cannot deepen depth {pef.r} to smaller depth {new_depth}")
    if policy not in ("lex-min", "seeded"):
        raise ValueError(f"unknown policy {policy!r}")
    if policy == "seeded":
        if seed is None:
            raise ValueError("policy 'seeded' requires a seed")
        rng = random.Random(seed)
    classes = {0: color_class(pef.sig, 0), 1: color_class(pef.sig, 1)}
    tables = list(pef.tables)
    current = pef
    for level in range(pef.r + 1, new_depth + 1):
        table: dict[EWord, Letter] = {}
        for alpha in omega(current, level):
            allowed = classes[color(alpha)]
            table[alpha] = allowed[0] if policy == "lex-min" else rng.choice(allowed)
        tables.append(table)
        current = PartialEFunction(pef.sig, tuple(tables))
    return current


# ---------------------------------------------------------------------------
# The coordinate maps between E-functions and configurations.


def _branch_words(pef: PartialEFunction) -> Iterator[tuple[EWord, Word, Word]]:
    """Yield (slot, odd word, even word) for every admissible slot of every level.

    The odd word is x_1^-1 f_1(x_1) ... x_i^-1 and the even word appends
    f_i(x_1..x_i); both are reduced by construction.
    """
    even: dict[EWord, Word] = {(): IDENTITY}
    slots: list[EWord] = [(x,) for x in positive_letters(pef.sig)]
    for level in range(1, pef.r + 1):
        table = pef.tables[level - 1]
        nxt: list[EWord] = []
        nxt_even: dict[EWord, Word] = {}
        for alpha in slots:
            odd = even[alpha[:-1]] + (alpha[-1].inverse(),)
            full = odd + (table[alpha],)
            nxt_even[alpha] = full
            yield alpha, odd, full
            if level < pef.r:
                nxt.extend(alpha + (x,) for x in positive_letters(pef.sig) if x != table[alpha])
        even = nxt_even
        slots = nxt


def psi(pef: PartialEFunction) -> Configuration:
    """The depth-2r configuration presented by the tables.

    Members are the identity together with, for every admissible slot
    x_1..x_i, the words x_1^-1 f_1(x_1) ... x_i^-1 and
    x_1^-1 f_1(x_1) ... x_i^-1 f_i(x_1..x_i).
    """
    members = {IDENTITY}
    for _, odd, full in _branch_words(pef):
        members.add(odd)
        members.add(full)
    return Configuration(pef.sig, 2 * pef.r, frozenset(members))


class ReadOffError(ValueError):
    """Raised when a configuration lacks the structure phi needs."""


def phi(cfg: Configuration, depth: int | None = None) -> PartialEFunction:
    """Read tables of depth floor(cfg.depth / 2) back off a configuration.

    Requires the identity's pattern to be C2 and, along every admissible
    branch, a unique positive continuation; raises ReadOffError otherwise.
    """
    r = cfg.depth // 2 if depth is None else depth
    if 2 * r > cfg.depth:
        raise ReadOffError(f"depth {cfg.depth} supports tables up to level {cfg.depth // 2}")
    pos = positive_letters(cfg.sig)
    tables: list[dict[EWord, Letter]] = []
    slots: list[tuple[EWord, Word]] = [((x,), (x.inverse(),)) for x in pos]
    for level in range(1, r + 1):
        table: dict[EWord, Letter] = {}
        nxt: list[tuple[EWord, Word]] = []
        for alpha, odd in slots:
            if odd not in cfg.members:
                raise ReadOffError(f"missing member {word_str(odd)}; pattern at the root is not C2")
            hits = [x for x in pos if odd + (x,) in cfg.members]
            if len(hits) != 1:
                raise ReadOffError(
                    f"{word_str(odd)} has {len(hits)} positive continuations, expected exactly 1"
                )
            table[alpha] = hits[0]
            if level < r:
                full = odd + (hits[0],)
                nxt.extend(
                    (alpha + (x,), full + (x.inverse(),)) for x in pos if x != hits[0]
                )
        tables.append(table)
        slots = nxt
    return PartialEFunction(cfg.sig, tuple(tables))


def in_basic_open(pef: PartialEFunction, cfg: Configuration) -> bool:
    """Whether the configuration lies in the basic open set of the tables.

    True iff every full-length branch word of the tables is a member.  The
    depth-0 function accepts everything.
    """
    if cfg.depth < 2 * pef.r:
        raise ReadOffError(f"configuration depth {cfg.depth} < 2r = {2 * pef.r}")
    if cfg.sig != pef.sig:
        raise SignatureError("signature mismatch between tables and configuration")
    for alpha, _, full in _branch_words(pef):
        if len(alpha) == pef.r and full not in cfg.members:
            return False
    return True


# ---------------------------------------------------------------------------
# JSON interface.


def e_word_str(alpha: EWord) -> str:
    return " ".join(str(x) for x in alpha)


def parse_e_word(text: str, sig: Signature) -> EWord:
    alpha = parse_word(text, sig)
    if any(x.sign != 1 for x in alpha):
        raise EFunctionError(f"E-words use positive letters only: {text!r}")
    return alpha


def to_json_obj(pef: PartialEFunction) -> dict:
    entries = []
    for level, table in enumerate(pef.tables, start=1):
        for alpha in sorted(table, key=lambda a: tuple(x.sort_key() for x in a)):
            entries.append({"alpha": e_word_str(alpha), "value": str(table[alpha])})
    return {"n": pef.sig.n, "m": pef.sig.m, "r": pef.r, "tables": entries}


def to_json(pef: PartialEFunction) -> str:
    return json.dumps(to_json_obj(pef), indent=2) + "\n"


def from_json_obj(obj: dict) -> PartialEFunction:
    sig = Signature(int(obj["n"]), int(obj["m"]))
    r = int(obj["r"])
    tables: list[dict[EWord, Letter]] = [{} for _ in range(r)]
    for entry in obj["tables"]:
        alpha = parse_e_word(entry["alpha"], sig)
        value = parse_e_word(entry["value"], sig)
        if len(value) != 1:
            raise EFunctionError(f"table value must be a single letter: {entry['value']!r}")
        if not 1 <= len(alpha) <= r:
            raise EFunctionError(f"table key {entry['alpha']!r} outside levels 1..{r}")
        tables[len(alpha) - 1][alpha] = value[0]
    pef = PartialEFunction(sig, tuple(tables))
    validate_efunction(pef)
    return pef


def from_json(text: str) -> PartialEFunction:
    return from_json_obj(json.loads(text))
