"""Certificates: topological freeness, depth-certified isotropy, free subgroups.

The freeness certifier scans every nontrivial reduced word g up to a length
bound.  Only even alternating words (and their conjugates of the mirrored
shape) can fix configurations: every member of a patterned configuration is
sign-alternating, negative-first when the root pattern is C2 and
positive-first when it is C1, and a fixed configuration must contain both g
and g^-1.  Accordingly a word is handled one of three ways:

* negative-first even alternating: one row per basic open set of the chosen
  depth, each row either a verified moved point (a one-level extension of
  the tables on which the action visibly differs) or a recorded reason why
  the domain misses the open set;
* positive-first even alternating: conjugating by the last letter gives a
  negative-first even alternating word whose rows cover it;
* anything else: no configuration contains both g and g^-1, checked
  exhaustively against the enumerated configurations at depth |g|.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator

from .action import act, alternating_form
from .config import (
    Configuration,
    DepthError,
    enumerate_omega,
    equal_at_depth,
    in_domain,
    translate,
    truncate,
)
from .efunc import (
    EWord,
    PartialEFunction,
    color,
    color_class,
    deepen,
    e_word_str,
    enumerate_pef,
    extend_forced,
)
from .freegroup import (
    FAMILY_A,
    FAMILY_B,
    IDENTITY,
    Letter,
    Signature,
    SignatureError,
    Word,
    ball,
    f2_image,
    invert,
    multiply,
    positive_letters,
    word_str,
)


# ---------------------------------------------------------------------------
# Topological freeness.


@dataclass(frozen=True)
class Witness:
    """A one-level extension of the base tables visibly moved by the word.

    `slot` is the level-(s+1) slot whose value was steered to `steered`;
    the action's output then disagrees with the extension at
    (divergence_level, divergence_slot).
    """

    extended: PartialEFunction
    slot: EWord
    steered: Letter
    divergence_level: int
    divergence_slot: EWord


@dataclass(frozen=True)
class EmptyDomain:
    """The word's domain misses the basic open set, with the recorded reason."""

    reason: str  # "incompatible-pair" or "table-conflict"
    detail: str


def _first_divergence(
    image: PartialEFunction, reference: PartialEFunction
) -> tuple[int, EWord] | None:
    """First (level, slot) where the image tables differ from the reference,
    comparing reference tables truncated to the image depth."""
    for level in range(1, image.r + 1):
        left = image.tables[level - 1]
        right = reference.tables[level - 1]
        keys = sorted(set(left) | set(right), key=lambda a: tuple(x.sort_key() for x in a))
        for alpha in keys:
            if left.get(alpha) != right.get(alpha):
                return level, alpha
    return None


def freeness_witness(
    g: Word, pef: PartialEFunction, sig: Signature
) -> Witness | EmptyDomain:
    """Exhibit a point of the basic open set moved by g, or the reason none is needed.

    g must be a nonempty even alternating word.  When the tables are
    shallower than |g|/2 + 1 they are first deepened lex-min.  The witness is
    a depth-(s+1) extension steering one new slot away from the value a fixed
    point would be forced to take; the divergence is re-verified through the
    action before returning.
    """
    if sig.n < 2 or sig.m < 2:
        raise SignatureError("freeness witnesses need n >= 2 and m >= 2")
    form = alternating_form(g)
    if form is None or form.r == 0:
        raise ValueError(f"{word_str(g)} is not a nonempty even alternating word")
    if not form.compatible:
        mismatch = next((z, x) for z, x in form.pairs if z.family == x.family)
        return EmptyDomain(
            "incompatible-pair",
            f"pair (z, x) = ({mismatch[0]}, {mismatch[1]}) shares a color class; "
            "the word's domain is empty",
        )
    r = form.r
    if pef.r <= r:
        pef = deepen(pef, r + 1)
    s = pef.r
    xs = tuple(x for _, x in form.pairs)
    zs = tuple(z for z, _ in form.pairs)

    prefix: EWord = ()
    for i in range(r):
        prefix = prefix + (xs[i],)
        have = pef.tables[i].get(prefix)
        if have != zs[i]:
            return EmptyDomain(
                "table-conflict",
                f"domain needs value {zs[i]} at {e_word_str(prefix)}, "
                f"but the tables fix {have}",
            )

    # Build the steering branch: y_1..y_{t+1} admissible both on its own and
    # after the x-prefix, with y_1 != z_r so the image reads the deep slot.
    forced = extend_forced(pef).values
    t = s - r
    pos = positive_letters(sig)
    ys: EWord = ()
    for _ in range(t + 1):
        banned = {forced[prefix + ys]}
        if ys:
            banned.add(forced[ys])
        ys = ys + (next(x for x in pos if x not in banned),)
    steered_slot = prefix + ys
    fixed_value = forced[ys]  # the value a fixed point would have to copy
    steered = next(x for x in color_class(sig, color(ys)) if x != fixed_value)

    extension = deepen(pef, s + 1)
    top = dict(extension.tables[s])
    top[steered_slot] = steered
    extension = PartialEFunction(sig, extension.tables[:s] + (top,))

    image = act(g, extension)
    if image is None:
        raise AssertionError("witness extension unexpectedly left the domain")
    divergence = _first_divergence(image, extension)
    if divergence is None:
        raise AssertionError("witness extension is not moved; construction is wrong")
    return Witness(extension, steered_slot, steered, divergence[0], divergence[1])


@dataclass(frozen=True)
class WordReport:
    """Per-word certification summary inside a freeness certificate."""

    g: Word
    kind: str  # "witnessed", "empty-domain", "conjugate", "no-fixed-configuration"
    rows: int
    witnesses: int
    empty_domains: int
    detail: str


@dataclass(frozen=True)
class FreenessCertificate:
    sig: Signature
    max_word_length: int
    open_depth: int
    reports: tuple[WordReport, ...]

    @property
    def certified(self) -> bool:
        return all(r.kind != "failed" for r in self.reports)

    def total_rows(self) -> int:
        return sum(r.rows for r in self.reports)


def _is_sign_alternating(w: Word) -> bool:
    return all(w[k].sign != w[k + 1].sign for k in range(len(w) - 1))


def certify_freeness(
    sig: Signature, max_word_length: int, open_depth: int
) -> FreenessCertificate:
    """Certify that no nontrivial word up to the length bound fixes an open set.

    Every basic open set of the given depth is covered for the alternating
    words; other words are discharged structurally as described in the module
    docstring.  A row that cannot be discharged marks its word report
    "failed" and leaves the certificate uncertified.
    """
    if sig.n < 2 or sig.m < 2:
        raise SignatureError("freeness certification needs n >= 2 and m >= 2")
    if open_depth < 1:
        raise ValueError("open_depth must be >= 1")
    reports: list[WordReport] = []
    omega_cache: dict[int, list[Configuration]] = {}

    def configs_at(depth: int) -> list[Configuration]:
        if depth not in omega_cache:
            omega_cache[depth] = enumerate_omega(sig, depth)
        return omega_cache[depth]

    for g in ball(sig, max_word_length):
        if not g:
            continue
        form = alternating_form(g)
        if form is not None and form.r > 0 and form.r <= open_depth:
            rows = witnesses = empties = 0
            for pef in enumerate_pef(sig, open_depth):
                row = freeness_witness(g, pef, sig)
                rows += 1
                if isinstance(row, Witness):
                    witnesses += 1
                else:
                    empties += 1
            kind = "witnessed" if witnesses else "empty-domain"
            detail = f"{witnesses} moved points, {empties} empty-domain rows"
            reports.append(WordReport(g, kind, rows, witnesses, empties, detail))
            continue
        if form is not None and form.r > open_depth:
            raise DepthError(
                f"{word_str(g)} needs open sets of depth > {open_depth}; "
                "raise open_depth or lower max_word_length"
            )
        if (
            len(g) % 2 == 0
            and _is_sign_alternating(g)
            and g[0].sign == 1
            and g[-1].sign == -1
        ):
            # Positive-first even alternating: conjugate by the last letter.
            z0 = g[-1].inverse()
            target = multiply(multiply((z0.inverse(),), g), (z0,))
            reports.append(
                WordReport(
                    g,
                    "conjugate",
                    1,
                    0,
                    0,
                    f"fixed sets translate to those of {word_str(target)}",
                )
            )
            continue
        # No configuration can contain both g and g^-1; check exhaustively.
        g_inv = invert(g)
        for cfg in configs_at(len(g)):
            if g in cfg.members and g_inv in cfg.members:
                reports.append(
                    WordReport(g, "failed", 1, 0, 0, "a configuration contains g and g^-1")
                )
                break
        else:
            reports.append(
                WordReport(
                    g,
                    "no-fixed-configuration",
                    1,
                    0,
                    0,
                    f"none of the {len(configs_at(len(g)))} depth-{len(g)} "
                    "configurations contains both g and g^-1",
                )
            )
    certificate = FreenessCertificate(sig, max_word_length, open_depth, tuple(reports))
    return certificate


# ---------------------------------------------------------------------------
# Isotropy.


def depth_isotropy_check(x: Word, cfg: Configuration, depth: int | None = None) -> bool:
    """Whether x fixes the configuration as far as the depth can see.

    Translates by x and compares with the original at depth `depth` - |x|.
    """
    depth = cfg.depth if depth is None else depth
    if depth > cfg.depth:
        raise DepthError(f"check depth {depth} exceeds configuration depth {cfg.depth}")
    if len(x) > depth:
        raise DepthError(f"|x| = {len(x)} exceeds check depth {depth}")
    base = truncate(cfg, depth)
    if not in_domain(x, base):
        return False
    return equal_at_depth(translate(x, base), base, depth - len(x))


def isotropy_chain(cfg: Configuration, j: int, depth: int | None = None) -> list[Word]:
    """The members b_j^-1 a_{i_1} b_j^-1 a_{i_2} ... read down the tree.

    Each a-index is the unique C1 witness after stepping to b_j^-1; the chain
    ends when the next vertex would leave the given depth.  The root pattern
    must be C2.
    """
    depth = cfg.depth if depth is None else depth
    if not 1 <= j <= cfg.sig.m:
        raise ValueError(f"b-index must lie in 1..{cfg.sig.m}")
    b_inv = Letter(FAMILY_B, j, -1)
    chain: list[Word] = []
    g: Word = IDENTITY
    while len(g) + 2 <= depth:
        step = g + (b_inv,)
        if step not in cfg.members:
            raise ValueError(
                f"{word_str(step)} is not a member; the walk needs C2/C1 patterns"
            )
        hits = [
            i
            for i in range(1, cfg.sig.n + 1)
            if step + (Letter(FAMILY_A, i, 1),) in cfg.members
        ]
        if len(hits) != 1:
            raise ValueError(
                f"{word_str(step)} has {len(hits)} a-continuations, expected exactly 1"
            )
        g = step + (Letter(FAMILY_A, hits[0], 1),)
        chain.append(g)
    return chain


class NoRepeatWithinDepthError(RuntimeError):
    """Raised when no two chain translates agree within the available depth."""


@dataclass(frozen=True)
class IsotropyWitness:
    """Two depth-certified isotropy elements with free rank-two images."""

    x: Word
    y: Word
    x_image: Word  # under the rank-two collapse
    y_image: Word
    certified_depth: int


def _chain_repeat_element(cfg: Configuration, j: int, depth: int) -> Word:
    """Find k < l whose chain translates agree at the residual depth and
    return the depth-certified element g_k g_l^-1.

    Comparisons at residual depth 0 are vacuous and skipped; a candidate is
    returned only if it passes the isotropy check itself.
    """
    chain = isotropy_chain(cfg, j, depth)
    translates = [translate(invert(g), cfg) for g in chain]
    for l in range(len(chain)):
        residual = depth - 2 * (l + 1)
        if residual < 1:
            continue
        for k in range(l):
            if not equal_at_depth(translates[k], translates[l], residual):
                continue
            element = multiply(chain[k], invert(chain[l]))
            if element and len(element) <= depth and depth_isotropy_check(element, cfg, depth):
                return element
    raise NoRepeatWithinDepthError(
        f"no repeated translate along the b_{j} chain within depth {depth}"
    )


def free_subgroup_witness(cfg: Configuration, depth: int | None = None) -> IsotropyWitness:
    """Two isotropy elements whose rank-two collapse images generate freely.

    Walks the b_1 and b_2 chains, finds repeated translates, and returns the
    corresponding elements; their images are nontrivial powers of c1 and c2,
    so they generate a free subgroup of rank two.  Needs m >= 2 and a
    C2-rooted configuration.
    """
    if cfg.sig.m < 2 or cfg.sig.n < 2:
        raise SignatureError("the free subgroup witness needs n >= 2 and m >= 2")
    depth = cfg.depth if depth is None else depth
    x = _chain_repeat_element(cfg, 1, depth)
    y = _chain_repeat_element(cfg, 2, depth)
    x_img = f2_image(x, cfg.sig)
    y_img = f2_image(y, cfg.sig)
    for img, index, name in ((x_img, 1, "x"), (y_img, 2, "y")):
        if not img or any(l.index != index for l in img):
            raise AssertionError(f"{name} image {word_str(img)} is not a power of c{index}")
    return IsotropyWitness(x, y, x_img, y_img, depth)


# ---------------------------------------------------------------------------
# Orbits.


def orbit(cfg: Configuration, max_length: int) -> list[tuple[Word, Configuration]]:
    """All translates by words up to the given length that are defined.

    Pairs come in canonical word order.  Translates of equal residual depth
    may coincide; deduplication is meaningful only within one residual depth
    (deeper originals carry more information).
    """
    if max_length > cfg.depth:
        raise DepthError(f"max length {max_length} exceeds configuration depth {cfg.depth}")
    out = []
    for g in ball(cfg.sig, max_length):
        if in_domain(g, cfg):
            out.append((g, translate(g, cfg)))
    return out
