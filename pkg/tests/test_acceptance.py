"""End-to-end acceptance suite.

Each test covers one numbered criterion, enforces its time budget, and
prints a single PASS line (visible with -rA or -s) carrying the headline
numbers.
"""

import itertools
import math
import time

import numpy as np

from mnshift import PartialIsometrySet, Signature
from mnshift.action import act, alternating_form
from mnshift.analysis import (
    certify_freeness,
    depth_isotropy_check,
    free_subgroup_witness,
)
from mnshift.config import enumerate_omega, translate, validate
from mnshift.efunc import (
    check_conditions,
    color,
    color_class,
    deepen,
    enumerate_pef,
    extend_forced,
    omega,
    phi,
    psi,
)
from mnshift.freegroup import (
    ball,
    is_reduced,
    letters,
    parse_word,
    positive_letters,
    word_str,
)
from mnshift.matrep import (
    check_R,
    tame_check,
    trace_bound_constant,
    trace_clause_residuals,
)
from mnshift.model import fixed_point, gamma

from conftest import matrix_unit, rotation_set

SIG22 = Signature(2, 2)
SIG32 = Signature(3, 2)

ALL_SIGS_2_TO_4 = [
    Signature(n, m) for m in (2, 3, 4) for n in (2, 3, 4) if n >= m
]


def report(number, elapsed, detail):
    print(f"criterion {number}: PASS ({elapsed:.1f}s) {detail}")


def alternating_words(sig, max_r):
    return [
        w
        for w in ball(sig, 2 * max_r)
        if (form := alternating_form(w)) is not None and form.r >= 1
    ]


def seeded_depth_three_tables(count):
    bases = list(enumerate_pef(SIG22, 1))
    return [
        deepen(bases[i % len(bases)], 3, policy="seeded", seed=i)
        for i in range(count)
    ]


def test_criterion_01_read_off_inverts_presentation():
    start = time.time()
    checked = 0
    for depth in (1, 2):
        for pef in enumerate_pef(SIG22, depth):
            assert phi(psi(pef)) == pef
            checked += 1
    rebuilt = 0
    for cfg in enumerate_omega(SIG22, 2, root_pattern="C2"):
        assert psi(phi(cfg)) == cfg
        rebuilt += 1
    elapsed = time.time() - start
    assert elapsed < 60
    report(1, elapsed, f"{checked} tables round-tripped, {rebuilt} configurations rebuilt")


def test_criterion_02_action_matches_translation():
    start = time.time()
    words = alternating_words(SIG22, 2)
    defined = 0
    for pef in enumerate_pef(SIG22, 2):
        xi = psi(pef)
        for g in words:
            image = act(g, pef)
            if image is None:
                continue
            assert psi(image) == translate(g, xi)
            defined += 1
    sampled = 0
    for pef in seeded_depth_three_tables(1000):
        xi = psi(pef)
        for g in words:
            image = act(g, pef)
            if image is None:
                continue
            assert psi(image) == translate(g, xi)
            sampled += 1
    elapsed = time.time() - start
    assert elapsed < 120
    report(2, elapsed, f"{defined} exhaustive + {sampled} sampled pairs agree")


def test_criterion_03_forced_extension_is_consistent_and_unique():
    start = time.time()
    extended = 0
    for depth in (1, 2):
        for pef in enumerate_pef(SIG22, depth):
            ext = extend_forced(pef)
            assert check_conditions(ext).violations == ()
            extended += 1
    unique = 0
    for pef in enumerate_pef(SIG22, 2):
        ext = extend_forced(pef)
        admissible = {w for lv in (1, 2) for w in omega(pef, lv)}
        free_slots = sorted(w for w in ext.values if w not in admissible)
        survivors = 0
        for picks in itertools.product(
            *[color_class(SIG22, color(w)) for w in free_slots]
        ):
            values = dict(ext.values)
            values.update(zip(free_slots, picks))
            if not check_conditions(ext.__class__(SIG22, 2, values)).violations:
                survivors += 1
                assert values == ext.values
        assert survivors == 1
        unique += 1
    for pef in seeded_depth_three_tables(1000):
        assert check_conditions(extend_forced(pef)).violations == ()
        extended += 1
    elapsed = time.time() - start
    assert elapsed < 60
    report(3, elapsed, f"{extended} extensions consistent, {unique} proven unique")


def test_criterion_04_freeness_certificate():
    start = time.time()
    cert = certify_freeness(SIG22, 3, 2)
    assert cert.certified
    kinds = {}
    for r in cert.reports:
        kinds[r.kind] = kinds.get(r.kind, 0) + 1
    assert kinds == {
        "witnessed": 8,
        "empty-domain": 4,
        "conjugate": 12,
        "no-fixed-configuration": 432,
    }
    assert len(cert.reports) == 456
    elapsed = time.time() - start
    assert elapsed < 300
    report(4, elapsed, f"{cert.total_rows()} rows over {len(cert.reports)} words certified")


def test_criterion_05_fixed_point_isotropy_across_signatures():
    start = time.time()
    checked = 0
    for sig in ALL_SIGS_2_TO_4:
        cfg = gamma(fixed_point(sig, capacity=8), 6)
        assert validate(cfg).violations == ()
        for text in ("b1^-1 a1", "b2^-1 a2"):
            assert depth_isotropy_check(parse_word(text, sig), cfg)
            checked += 1
    elapsed = time.time() - start
    assert elapsed < 30
    report(5, elapsed, f"{checked} isotropy checks over {len(ALL_SIGS_2_TO_4)} signatures")


def test_criterion_06_free_subgroup_witness():
    start = time.time()
    cfg = gamma(fixed_point(SIG22, capacity=10), 8)
    witness = free_subgroup_witness(cfg)
    for image, index in ((witness.x_image, 1), (witness.y_image, 2)):
        assert image and all(
            l.family == "c" and l.index == index and l.sign == 1 for l in image
        )
    elapsed = time.time() - start
    assert elapsed < 10
    report(
        6,
        elapsed,
        f"x = {word_str(witness.x)} -> {word_str(witness.x_image)}, "
        f"y = {word_str(witness.y)} -> {word_str(witness.y_image)}",
    )


def test_criterion_07_counts_match_independent_enumerators():
    start = time.time()
    # Reduced words of length <= 3 over the eight letters.
    brute_ball = {()} | {
        combo
        for length in (1, 2, 3)
        for combo in itertools.product(letters(SIG22), repeat=length)
        if is_reduced(combo)
    }
    assert len(brute_ball) == 457
    assert set(ball(SIG22, 3)) == brute_ball

    # Level-2 slot counts by filtering all positive two-letter words.
    for sig, expected in ((SIG22, 12), (SIG32, 20)):
        pef = next(enumerate_pef(sig, 1))
        singles = [(x,) for x in positive_letters(sig)]
        brute_slots = {
            alpha + x
            for alpha in singles
            for x in singles
            if x[0] != pef.value(alpha)
        }
        assert len(brute_slots) == expected
        assert set(omega(pef, 2)) == brute_slots

    # Table counts by unconstrained choice at depth 1 and slot-wise choice
    # at depth 2.
    slots = [(x,) for x in positive_letters(SIG22)]
    brute_depth_one = 1
    for alpha in slots:
        brute_depth_one *= len(color_class(SIG22, color(alpha)))
    assert brute_depth_one == 16
    assert sum(1 for _ in enumerate_pef(SIG22, 1)) == 16

    brute_depth_two = 0
    for pef in enumerate_pef(SIG22, 1):
        choices = 1
        for alpha in omega(pef, 2):
            choices *= len(color_class(SIG22, color(alpha)))
        brute_depth_two += choices
    assert brute_depth_two == 65536
    assert sum(1 for _ in enumerate_pef(SIG22, 2)) == 65536
    elapsed = time.time() - start
    report(7, elapsed, "counts 457, 12, 20, 16, 65536 confirmed")


def test_criterion_08_rotation_family_relations_and_tameness():
    start = time.time()
    for theta in (0.0, math.pi / 4, 1.0):
        pset = rotation_set(theta)
        assert check_R(pset).max_residual <= 1e-12
        assert trace_clause_residuals(pset) <= 1e-12
    tame = tame_check(rotation_set(0.0), 6)
    assert tame.tame and tame.words_checked == 2336
    violated = tame_check(rotation_set(math.pi / 4), 6)
    assert not violated.tame
    assert violated.violation_word == "S1* T1"
    assert abs(violated.violation_defect - math.sqrt(2) / 4) < 1e-9
    elapsed = time.time() - start
    assert elapsed < 10
    report(8, elapsed, "relations exact, tame at 0, violation S1* T1 at pi/4")


def test_criterion_09_trace_bound_for_unbalanced_signature():
    start = time.time()
    sig = Signature(2, 1)
    C = trace_bound_constant(sig)
    assert C == 3.0
    d = 4
    rng = np.random.default_rng(17)
    for eps in (1e-6, 1e-3):
        for noisy in (False, True):
            delta = math.sqrt(eps)
            scale = math.sqrt(1.0 - delta * delta / 2.0)
            S1 = delta * matrix_unit(d, 1, 0)
            S2 = delta * scale * matrix_unit(d, 2, 0)
            T1 = delta * scale * matrix_unit(d, 3, 0)
            if noisy:
                T1 = T1 + rng.standard_normal((d, d)) * eps / 10.0
            pset = PartialIsometrySet(sig, (S1, S2), (T1,))
            eps_hat = trace_clause_residuals(pset)
            t_w = float(np.trace(pset.w_matrix()).real)
            assert t_w <= C * d * eps_hat + 1e-12
    elapsed = time.time() - start
    assert elapsed < 10
    report(9, elapsed, f"tr(w) <= {C:.0f} * d * eps on 4 near-solutions")


def test_criterion_10_every_emitted_configuration_validates():
    start = time.time()
    validated = 0
    rank_one_words = alternating_words(SIG22, 1)
    for pef in enumerate_pef(SIG22, 2):
        xi = psi(pef)
        assert validate(xi).violations == ()
        validated += 1
        for g in rank_one_words:
            image = act(g, pef)
            if image is None:
                continue
            moved = translate(g, xi)
            assert validate(moved).violations == ()
            validated += 1
    for pef in seeded_depth_three_tables(1000):
        xi = psi(pef)
        assert validate(xi).violations == ()
        validated += 1
    for sig in ALL_SIGS_2_TO_4:
        cfg = gamma(fixed_point(sig, capacity=8), 6)
        assert validate(cfg).violations == ()
        validated += 1
    cfg = gamma(fixed_point(SIG22, capacity=10), 8)
    assert validate(cfg).violations == ()
    validated += 1
    elapsed = time.time() - start
    report(10, elapsed, f"{validated} configurations validated with no violations")
