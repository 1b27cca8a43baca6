"""The left-translation action written directly on E-function tables.

A group word acts on root-pattern-C2 configurations only when it has the
even alternating shape

    g = z_r^-1 x_r z_{r-1}^-1 x_{r-1} ... z_1^-1 x_1

with all z_i, x_i positive letters.  Its domain is nonempty only when each
z_i lies in the color class opposite to x_i, and consists of the tables with
f_i(x_1..x_i) = z_i for i = 1..r.  The image tables are read off the forced
total extension of the input: writing q for the length of the longest common
prefix of a slot w with (z_r, ..., z_1),

    h(w) = x_{r-|w|+1}                       if w is itself a z-prefix,
    h(w) = F(x_1 .. x_{r-q}  w_{q+1} .. w_k) otherwise,

where F is the forced extension of the input tables.  The output depth is
uniformly r_f - r_g: the part of the image determined by every input of
depth r_f.
"""

from __future__ import annotations

from dataclasses import dataclass

from .config import Configuration, translate
from .efunc import EWord, PartialEFunction, extend_forced, psi
from .freegroup import Letter, Word, positive_letters, word_str


class NotAlternatingError(ValueError):
    """Raised for words without the even alternating shape."""


class DepthShortfallError(ValueError):
    """Raised when the input tables are shallower than the acting word."""


@dataclass(frozen=True)
class AlternatingForm:
    """Pairs (z_i, x_i) of an even alternating word, index 1 innermost first."""

    pairs: tuple[tuple[Letter, Letter], ...]

    @property
    def r(self) -> int:
        return len(self.pairs)

    @property
    def compatible(self) -> bool:
        """Whether each z_i lies in the color class opposite to x_i."""
        return all(z.family != x.family for z, x in self.pairs)


def alternating_form(g: Word) -> AlternatingForm | None:
    """Decompose an even alternating word, or return None.

    Letters must alternate inverse, positive, inverse, positive, ...; the
    empty word yields the empty form.
    """
    if len(g) % 2 != 0:
        return None
    pairs = []
    for k in range(0, len(g), 2):
        z_inv, x = g[k], g[k + 1]
        if z_inv.sign != -1 or x.sign != 1:
            return None
        pairs.append((z_inv.inverse(), x))
    # The word reads (z_r, x_r), ..., (z_1, x_1); store innermost first.
    return AlternatingForm(tuple(reversed(pairs)))


def act(g: Word, pef: PartialEFunction) -> PartialEFunction | None:
    """Apply the word to the tables; None when the tables are outside the domain.

    Raises NotAlternatingError for words of the wrong shape and
    DepthShortfallError when r_g exceeds the table depth.
    """
    form = alternating_form(g)
    if form is None:
        raise NotAlternatingError(f"{word_str(g)} is not an even alternating word")
    r = form.r
    if r > pef.r:
        raise DepthShortfallError(f"word needs depth {r}, tables have {pef.r}")
    if not form.compatible:
        return None
    xs = tuple(x for _, x in form.pairs)  # (x_1, ..., x_r)
    zs = tuple(z for z, _ in form.pairs)  # (z_1, ..., z_r)
    prefix: EWord = ()
    for i in range(r):
        prefix = prefix + (xs[i],)
        if pef.tables[i].get(prefix) != zs[i]:
            return None

    out_depth = pef.r - r
    if out_depth == 0:
        return PartialEFunction(pef.sig, ())

    forced = extend_forced(pef).values
    z_seq = tuple(reversed(zs))  # (z_r, ..., z_1)
    pos = positive_letters(pef.sig)

    def image_value(w: EWord) -> Letter:
        q = 0
        while q < len(w) and q < r and w[q] == z_seq[q]:
            q += 1
        if q == len(w):
            return xs[r - q]  # x_{r-|w|+1}
        return forced[xs[: r - q] + w[q:]]

    tables: list[dict[EWord, Letter]] = []
    slots: list[EWord] = [(x,) for x in pos]
    for _ in range(out_depth):
        table = {w: image_value(w) for w in slots}
        tables.append(table)
        slots = [w + (x,) for w in slots for x in pos if x != table[w]]
    return PartialEFunction(pef.sig, tuple(tables))


def act_oracle(g: Word, pef: PartialEFunction) -> Configuration:
    """Independent reference for `act`: translate the presented configuration.

    Returns the depth-(2(r_f - r_g)) translate of psi(tables); by the
    coordinate correspondence this must equal psi(act(g, tables)) whenever
    the latter is defined.
    """
    return translate(g, psi(pef))
