"""Exact piecewise-linear calculus: complexes, compilation, integration,
synthesis, and affine maps."""

import random
from fractions import Fraction

import pytest

from mvdyn.formula import (
    Var, Star, Impl, Neg, And, Or, OPlus, ZERO, ONE, parse_formula, evaluate,
    LUKASIEWICZ,
)
from mvdyn.pwl import (
    CellComplex, PWLFunction, AffinePiece, AffineMap, CellBudgetError,
    unit_complex, common_refinement, pwl_from_formula, pwl_eval, pwl_combine,
    pwl_equal, pwl_le, pwl_min_value, pwl_integral, clamp_affine_formula,
    pwl_to_formula_1d, affine_from_simplex_pair, pwl_to_json, pwl_from_json,
    _synthesize_formula,
)

F = Fraction

X0, X1 = Var(0), Var(1)
TENT = parse_formula("x0 (+) x0 & !x0 (+) !x0")
FIGURE = parse_formula("!x0 | (x0 & !x0) (+) (x0 & !x0)")


def rand_formula(rng, n, depth):
    if depth == 0 or rng.random() < 0.25:
        return rng.choice([Var(rng.randrange(n)), ZERO, ONE])
    op = rng.choice(["star", "impl", "neg", "and", "or", "oplus"])
    if op == "neg":
        return Neg(rand_formula(rng, n, depth - 1))
    ctor = {"star": Star, "impl": Impl, "and": And, "or": Or, "oplus": OPlus}[op]
    return ctor(rand_formula(rng, n, depth - 1), rand_formula(rng, n, depth - 1))


def rand_point(rng, n, den=16):
    return tuple(F(rng.randint(0, den), den) for _ in range(n))


# -- known compilations ----------------------------------------------------------------

def test_tent_pieces():
    w = pwl_from_formula(TENT)
    assert w.dim == 1
    spans = sorted((w.complex.cell_points(j)[0][0], w.complex.cell_points(j)[1][0])
                   for j in range(len(w.complex.cells)))
    assert spans == [(F(0), F(1, 2)), (F(1, 2), F(1))]
    pieces = sorted((p.a, p.b) for p in w.pieces)
    assert pieces == [((-2,), 2), ((2,), 0)]


def test_alternate_tent_spelling_is_equal():
    other = parse_formula("(x0 & !x0) (+) (x0 & !x0)")
    assert pwl_equal(pwl_from_formula(TENT), pwl_from_formula(other))


def test_figure_formula_three_pieces():
    w = pwl_from_formula(FIGURE)
    cuts = sorted({v[0] for v in w.complex.vertices})
    assert cuts == [F(0), F(1, 3), F(1, 2), F(1)]
    by_span = {}
    for j in range(len(w.complex.cells)):
        lo = w.complex.cell_points(j)[0][0]
        by_span[lo] = (w.pieces[j].a, w.pieces[j].b)
    assert by_span[F(0)] == ((-1,), 1)
    assert by_span[F(1, 3)] == ((2,), 0)
    assert by_span[F(1, 2)] == ((-2,), 2)


def test_constant_formula_single_piece():
    w = pwl_from_formula(ONE, dim=1)
    assert len(w.complex.cells) == 1
    assert w.pieces[0].a == (0,) and w.pieces[0].b == 1


def test_dimension_guards():
    with pytest.raises(ValueError):
        pwl_from_formula(Var(2))
    with pytest.raises(ValueError):
        pwl_from_formula(X1, dim=1)


# -- semantic faithfulness --------------------------------------------------------------

def test_eval_matches_semantics_1d():
    rng = random.Random(101)
    for _ in range(120):
        f = rand_formula(rng, 1, 4)
        w = pwl_from_formula(f, 1)
        w.validate()
        for _ in range(6):
            p = rand_point(rng, 1)
            assert pwl_eval(w, p) == evaluate(f, LUKASIEWICZ, p), (f, p)


def test_eval_matches_semantics_2d():
    rng = random.Random(202)
    for _ in range(80):
        f = rand_formula(rng, 2, 4)
        w = pwl_from_formula(f, 2)
        w.validate()
        for _ in range(6):
            p = rand_point(rng, 2)
            assert pwl_eval(w, p) == evaluate(f, LUKASIEWICZ, p), (f, p)


def test_combine_examples():
    x = pwl_from_formula(X0, 1)
    two_x = pwl_combine("oplus", x, x)
    assert pwl_eval(two_x, (F(1, 4),)) == F(1, 2)
    assert pwl_eval(two_x, (F(3, 4),)) == 1
    m = pwl_combine("min", x, pwl_combine("neg", x))
    assert pwl_eval(m, (F(1, 4),)) == F(1, 4)
    assert pwl_eval(m, (F(3, 4),)) == F(1, 4)
    with pytest.raises(ValueError):
        pwl_combine("min", x)
    with pytest.raises(ValueError):
        pwl_combine("neg", x, x)


# -- refinement --------------------------------------------------------------------------

def test_refinement_1d_unions_breakpoints():
    w1 = pwl_from_formula(TENT).complex
    w2 = pwl_from_formula(FIGURE).complex
    r = common_refinement(w1, w2)
    cuts = sorted(v[0] for v in r.vertices)
    assert cuts == [F(0), F(1, 3), F(1, 2), F(1)]


def test_refinement_idempotent_supports():
    w = pwl_from_formula(FIGURE).complex
    r = common_refinement(w, w)
    assert sorted(v[0] for v in r.vertices) == sorted(v[0] for v in w.vertices)


def test_refinement_opposite_diagonals():
    a = unit_complex(2)
    flipped = CellComplex(2, [(F(0), F(0)), (F(1), F(0)), (F(1), F(1)), (F(0), F(1))],
                          [(0, 1, 3), (1, 2, 3)])
    r = common_refinement(a, flipped)
    r.validate()
    assert (F(1, 2), F(1, 2)) in r.vertices
    assert len(r.cells) == 4


# -- queries ------------------------------------------------------------------------------

def test_min_value():
    assert pwl_min_value(pwl_from_formula(ONE, dim=1))[0] == 1
    val, witness = pwl_min_value(pwl_from_formula(TENT))
    assert val == 0 and witness[0] in (F(0), F(1))
    assert pwl_min_value(pwl_from_formula(parse_formula("!!x0 -> x0")))[0] == 1


def test_pwl_equal_and_le():
    assert pwl_equal(pwl_from_formula(And(X0, X1)), pwl_from_formula(And(X1, X0)))
    assert pwl_equal(pwl_from_formula(Neg(Neg(X0))), pwl_from_formula(X0))
    assert not pwl_equal(pwl_from_formula(X0), pwl_from_formula(OPlus(X0, X0)))
    assert pwl_le(pwl_from_formula(Star(X0, X1)), pwl_from_formula(And(X0, X1)))
    assert not pwl_le(pwl_from_formula(OPlus(X0, X0)), pwl_from_formula(X0))


def test_le_random_consistency():
    rng = random.Random(303)
    for _ in range(40):
        f, g = rand_formula(rng, 2, 3), rand_formula(rng, 2, 3)
        wf, wg = pwl_from_formula(f, 2), pwl_from_formula(g, 2)
        le = pwl_le(wf, wg)
        for _ in range(8):
            p = rand_point(rng, 2)
            if le:
                assert pwl_eval(wf, p) <= pwl_eval(wg, p)


# -- integration --------------------------------------------------------------------------

def test_figure_integral():
    w = pwl_from_formula(FIGURE)
    oracle = F(5, 18) + F(5, 36) + F(1, 4)
    assert pwl_integral(w) == oracle == F(2, 3)


def test_tent_integrals():
    w = pwl_from_formula(TENT)
    assert pwl_integral(w) == F(1, 2)
    assert pwl_integral(w, [(F(0), F(1, 4))]) == F(1, 16)
    assert pwl_integral(w, [(F(0), F(1, 2))]) == F(1, 4)


def test_integral_2d():
    assert pwl_integral(pwl_from_formula(X0, 2)) == F(1, 2)
    assert pwl_integral(pwl_from_formula(And(X0, X1))) == F(1, 3)
    assert pwl_integral(pwl_from_formula(Star(X0, X1))) == F(1, 6)
    assert pwl_integral(pwl_from_formula(Or(X0, X1))) == F(2, 3)
    assert pwl_integral(pwl_from_formula(X0, 2),
                        [(F(0), F(1, 2)), (F(0), F(1))]) == F(1, 8)


def test_integral_additive_and_monotone():
    rng = random.Random(404)
    for _ in range(25):
        f = rand_formula(rng, 2, 3)
        w = pwl_from_formula(f, 2)
        c = F(rng.randint(1, 7), 8)
        left = pwl_integral(w, [(F(0), c), (F(0), F(1))])
        right = pwl_integral(w, [(c, F(1)), (F(0), F(1))])
        assert left + right == pwl_integral(w)
        g = rand_formula(rng, 2, 3)
        wg = pwl_from_formula(g, 2)
        assert pwl_integral(pwl_combine("max", w, wg)) >= pwl_integral(w)


def test_degenerate_box_warns():
    w = pwl_from_formula(TENT)
    with pytest.warns(UserWarning):
        val = pwl_integral(w, [(F(1, 2), F(1, 2))])
    assert val == 0


# -- clamped affine synthesis ---------------------------------------------------------------

def test_clamp_formula_matches_function():
    rng = random.Random(505)
    for _ in range(60):
        n = rng.randint(1, 2)
        coeffs = [rng.randint(-4, 4) for _ in range(n)]
        const = rng.randint(-3, 4)
        f = clamp_affine_formula(coeffs, const)
        for _ in range(8):
            p = rand_point(rng, n, den=9)
            want = min(1, max(0, sum(c * x for c, x in zip(coeffs, p)) + const))
            assert evaluate(f, LUKASIEWICZ, p) == want, (coeffs, const, p)


def test_clamp_constant_edges():
    assert evaluate(clamp_affine_formula([0], 5), LUKASIEWICZ, (F(1, 2),)) == 1
    assert evaluate(clamp_affine_formula([0], -1), LUKASIEWICZ, (F(1, 2),)) == 0
    f = clamp_affine_formula([1], 0)
    assert evaluate(f, LUKASIEWICZ, (F(1, 3),)) == F(1, 3)


def test_synthesis_round_trip_1d():
    rng = random.Random(606)
    done = 0
    while done < 40:
        f = rand_formula(rng, 1, 4)
        w = pwl_from_formula(f, 1)
        g = pwl_to_formula_1d(w)
        assert pwl_equal(pwl_from_formula(g, 1), w), f
        done += 1


def test_synthesis_round_trip_2d_small():
    rng = random.Random(707)
    for _ in range(12):
        f = rand_formula(rng, 2, 2)
        w = pwl_from_formula(f, 2)
        g = _synthesize_formula(w)
        assert pwl_equal(pwl_from_formula(g, 2), w), f


def test_synthesize_rejects_2d_via_public_gate():
    with pytest.raises(ValueError):
        pwl_to_formula_1d(pwl_from_formula(And(X0, X1)))


# -- validation ------------------------------------------------------------------------------

def test_validate_rejects_gap():
    broken = CellComplex(1, [(F(0),), (F(1, 2),), (F(1),)], [(0, 1)])
    with pytest.raises(ValueError):
        broken.validate()


def test_validate_rejects_overlap_2d():
    verts = [(F(0), F(0)), (F(1), F(0)), (F(1), F(1)), (F(0), F(1))]
    broken = CellComplex(2, verts, [(0, 1, 2), (0, 2, 3), (0, 1, 3)])
    with pytest.raises(ValueError):
        broken.validate()


def test_validate_rejects_discontinuity():
    w = unit_complex(1)
    two = CellComplex(1, [(F(0),), (F(1, 2),), (F(1),)], [(0, 1), (1, 2)])
    f = PWLFunction(two, [AffinePiece((1,), 0), AffinePiece((0,), 0)])
    with pytest.raises(ValueError):
        f.validate()
    g = PWLFunction(w, [AffinePiece((2,), 0)])
    with pytest.raises(ValueError):
        g.validate()


def test_locate_and_measure():
    w = pwl_from_formula(TENT).complex
    j = w.locate((F(1, 4),))
    assert w.cell_points(j)[0][0] == F(0)
    assert sum(w.measure(j) for j in range(len(w.cells))) == 1
    sq = unit_complex(2)
    assert sum(sq.measure(j) for j in range(len(sq.cells))) == 1
    with pytest.raises(ValueError):
        w.locate((F(3, 2),))


# -- cell budget -------------------------------------------------------------------------------

def test_cell_budget_raises():
    f = X0
    for _ in range(6):
        f = And(OPlus(f, f), OPlus(Neg(f), Neg(f)))
    with pytest.raises(CellBudgetError):
        pwl_from_formula(f, 1, cell_budget=5)


def test_cell_budget_passes_small():
    w = pwl_from_formula(TENT, cell_budget=50)
    assert len(w.complex.cells) == 2


# -- affine maps -------------------------------------------------------------------------------

def test_affine_from_simplex_pair_1d():
    m = affine_from_simplex_pair([(F(0),), (F(1, 2),)], [(F(1),), (F(0),)])
    assert m.a == ((F(-2),),) and m.b == (F(1),)
    assert m.apply((F(1, 4),)) == (F(1, 2),)
    assert m.det() == -2
    assert m.is_integral


def test_affine_from_simplex_pair_2d_rotation_cell():
    src = [(F(1, 4), F(1, 4)), (F(1), F(0)), (F(1, 2), F(1, 4))]
    tgt = [(F(1, 2), F(1, 4)), (F(1), F(0)), (F(1, 4), F(1, 2))]
    m = affine_from_simplex_pair(src, tgt)
    assert m.a == ((F(-1), F(-5)), (F(1), F(4)))
    assert m.b == (F(2), F(-1))
    assert m.det() == 1
    assert m.is_integral
    for s, t in zip(src, tgt):
        assert m.apply(s) == t


def test_affine_degenerate_raises():
    with pytest.raises(ValueError):
        affine_from_simplex_pair([(F(0),), (F(0),)], [(F(0),), (F(1),)])
    with pytest.raises(ValueError):
        affine_from_simplex_pair(
            [(F(0), F(0)), (F(1), F(1)), (F(1, 2), F(1, 2))],
            [(F(0), F(0)), (F(1), F(0)), (F(0), F(1))])


# -- serialization ------------------------------------------------------------------------------

def test_json_round_trip():
    for f in (TENT, FIGURE, And(X0, X1), parse_formula("x0 (+) x1 -> x0 * x1")):
        w = pwl_from_formula(f)
        again = pwl_from_json(pwl_to_json(w))
        assert pwl_equal(w, again)


def test_json_rejects_bad_payload():
    w = pwl_from_formula(TENT)
    obj = pwl_to_json(w)
    obj["cells"] = [[0, 99]]
    with pytest.raises((ValueError, IndexError)):
        pwl_from_json(obj)
