"""Formula construction, parsing, printing, semantics, and substitutions."""

import random
from fractions import Fraction

import pytest

from mvdyn.formula import (
    Formula, Var, Star, Impl, Neg, And, Or, OPlus, ZERO, ONE,
    ParseError, parse_formula, print_formula, variables_of, arity_of,
    GODEL, PRODUCT, LUKASIEWICZ, BOOLE, chain_semantics, evaluate,
    Substitution, apply_substitution, compose_substitutions,
    tautology_check, identity_check, rationals_up_to,
)

F = Fraction

X0, X1, X2 = Var(0), Var(1), Var(2)


def rand_formula(rng, n, depth):
    if depth == 0 or rng.random() < 0.25:
        return rng.choice([Var(rng.randrange(n)), ZERO, ONE])
    op = rng.choice(["star", "impl", "neg", "and", "or", "oplus"])
    if op == "neg":
        return Neg(rand_formula(rng, n, depth - 1))
    ctor = {"star": Star, "impl": Impl, "and": And, "or": Or, "oplus": OPlus}[op]
    return ctor(rand_formula(rng, n, depth - 1), rand_formula(rng, n, depth - 1))


def rand_point(rng, n, den=12):
    return tuple(F(rng.randint(0, den), den) for _ in range(n))


# -- structure ---------------------------------------------------------------------

def test_variables_and_arity():
    f = Impl(Star(X0, X2), Neg(X0))
    assert variables_of(f) == frozenset({0, 2})
    assert arity_of(f) == 3
    assert arity_of(ONE) == 0


def test_equality_is_modulo_sugar():
    assert Neg(X0) == Impl(X0, ZERO)
    assert And(X0, X1) == Star(X0, Impl(X0, X1))
    assert OPlus(X0, X1) == Impl(Neg(X0), X1)
    assert Or(X0, X1) == And(Impl(Impl(X0, X1), X1), Impl(Impl(X1, X0), X0))
    assert Neg(X0) != Neg(X1)
    assert hash(Neg(X0)) == hash(Impl(X0, ZERO))


def test_core_is_sugar_free():
    core = Or(Neg(X0), OPlus(X0, X1)).core()
    ops = set()
    stack = [core]
    while stack:
        node = stack.pop()
        ops.add(node.op)
        stack.extend(node.args)
    assert ops <= {"star", "impl", "var", "zero", "one"}


# -- parsing and printing -----------------------------------------------------------

def test_parse_precedence():
    assert parse_formula("!x0 * x1") == Star(Neg(X0), X1)
    assert parse_formula("x0 (+) x1 & x2") == And(OPlus(X0, X1), X2)
    assert parse_formula("x0 & x1 | x2") == Or(And(X0, X1), X2)
    assert parse_formula("x0 | x1 -> x2") == Impl(Or(X0, X1), X2)
    assert parse_formula("x0 -> x1 -> x2") == Impl(X0, Impl(X1, X2))
    assert parse_formula("!!x0") == Neg(Neg(X0))
    assert parse_formula("(x0 -> x1) -> x2") == Impl(Impl(X0, X1), X2)
    assert parse_formula("0 -> 1") == Impl(ZERO, ONE)


def test_parse_oplus_vs_parenthesis():
    assert parse_formula("x0 (+) (x1)") == OPlus(X0, X1)
    assert parse_formula("(x0) (+) x1") == OPlus(X0, X1)


def test_parse_errors_carry_offset():
    with pytest.raises(ParseError) as err:
        parse_formula("x0 -> ")
    assert err.value.offset == 6
    assert err.value.expected

    with pytest.raises(ParseError) as err:
        parse_formula("x0 @ x1")
    assert err.value.offset == 3

    with pytest.raises(ParseError):
        parse_formula("(x0 -> x1")
    with pytest.raises(ParseError):
        parse_formula("")
    with pytest.raises(ParseError):
        parse_formula("x")


def test_print_parse_round_trip():
    rng = random.Random(42)
    for _ in range(300):
        f = rand_formula(rng, 3, 4)
        assert parse_formula(print_formula(f)) == f


def test_print_known_forms():
    assert print_formula(Impl(X0, X1)) == "x0 -> x1"
    assert print_formula(Star(Neg(X0), X1)) == "!x0 * x1"
    assert print_formula(Impl(Impl(X0, X1), X2)) == "(x0 -> x1) -> x2"


# -- semantics ----------------------------------------------------------------------

def test_godel_connectives():
    a, b = F(1, 3), F(2, 3)
    assert evaluate(Star(X0, X1), GODEL, (a, b)) == a
    assert evaluate(Impl(X0, X1), GODEL, (a, b)) == 1
    assert evaluate(Impl(X0, X1), GODEL, (b, a)) == a
    assert evaluate(Neg(X0), GODEL, (F(0),)) == 1
    assert evaluate(Neg(X0), GODEL, (a,)) == 0


def test_product_connectives():
    a, b = F(1, 3), F(2, 3)
    assert evaluate(Star(X0, X1), PRODUCT, (a, b)) == F(2, 9)
    assert evaluate(Impl(X0, X1), PRODUCT, (b, a)) == F(1, 2)
    assert evaluate(Impl(X0, X1), PRODUCT, (a, b)) == 1
    assert evaluate(Neg(X0), PRODUCT, (F(0),)) == 1
    assert evaluate(Neg(X0), PRODUCT, (a,)) == 0


def test_lukasiewicz_connectives():
    a, b = F(1, 3), F(2, 3)
    assert evaluate(Star(X0, X1), LUKASIEWICZ, (b, b)) == F(1, 3)
    assert evaluate(Star(X0, X1), LUKASIEWICZ, (a, a)) == 0
    assert evaluate(Impl(X0, X1), LUKASIEWICZ, (b, a)) == F(2, 3)
    assert evaluate(Neg(X0), LUKASIEWICZ, (a,)) == F(2, 3)
    assert evaluate(OPlus(X0, X1), LUKASIEWICZ, (b, b)) == 1
    assert evaluate(OPlus(X0, X1), LUKASIEWICZ, (a, a)) == F(2, 3)


def test_min_max_are_lattice_ops_everywhere():
    rng = random.Random(7)
    for sem in (GODEL, PRODUCT, LUKASIEWICZ):
        for _ in range(200):
            a, b = rand_point(rng, 2)
            assert evaluate(And(X0, X1), sem, (a, b)) == min(a, b)
            assert evaluate(Or(X0, X1), sem, (a, b)) == max(a, b)


def test_residuation_adjointness_sampled():
    rng = random.Random(11)
    for sem in (GODEL, PRODUCT, LUKASIEWICZ):
        for _ in range(500):
            a, b, c = rand_point(rng, 3)
            lhs = sem.star(c, a) <= b
            rhs = c <= sem.impl(a, b)
            assert lhs == rhs, (sem.kind, a, b, c)


def test_evaluate_checks_domain():
    with pytest.raises(ValueError):
        evaluate(X0, LUKASIEWICZ, (F(3, 2),))
    with pytest.raises(ValueError):
        evaluate(X1, LUKASIEWICZ, (F(1, 2),))
    with pytest.raises(ValueError):
        evaluate(X0, chain_semantics(3), (F(1, 2),))


def test_evaluate_shared_subterms_once():
    f = X0
    for _ in range(40):
        f = OPlus(f, f)
    assert evaluate(f, LUKASIEWICZ, (F(0),)) == 0
    assert evaluate(f, LUKASIEWICZ, (F(1, 2),)) == 1


# -- finite chains ------------------------------------------------------------------

def test_chain_semantics_carrier():
    sem = chain_semantics(3)
    assert sem.carrier() == [F(0), F(1, 3), F(2, 3), F(1)]
    assert sem.star(F(2, 3), F(2, 3)) == F(1, 3)
    assert sem.impl(F(2, 3), F(1, 3)) == F(2, 3)
    g = chain_semantics(3, "godel")
    assert g.star(F(2, 3), F(1, 3)) == F(1, 3)
    assert g.impl(F(2, 3), F(1, 3)) == F(1, 3)


def test_boole_is_two_valued():
    assert BOOLE.carrier() == [F(0), F(1)]
    assert evaluate(Or(X0, Neg(X0)), BOOLE, (F(1),)) == 1


def test_chain_closure_under_operations():
    for m in (1, 2, 3, 5):
        for base in ("lukasiewicz", "godel"):
            sem = chain_semantics(m, base)
            carrier = sem.carrier()
            for a in carrier:
                for b in carrier:
                    assert sem.star(a, b) in carrier
                    assert sem.impl(a, b) in carrier


# -- tautology and identity checks ----------------------------------------------------

def test_tautology_truth_table():
    v = tautology_check(Impl(Neg(Neg(X0)), X0), chain_semantics(4))
    assert v.is_tautology
    v = tautology_check(Or(X0, Neg(X0)), chain_semantics(2))
    assert v.status == "countermodel"
    assert evaluate(Or(X0, Neg(X0)), chain_semantics(2), v.point) != 1


def test_tautology_exact_pwl():
    assert tautology_check(Impl(Neg(Neg(X0)), X0), LUKASIEWICZ).is_tautology
    assert tautology_check(Impl(Star(X0, X1), X0), LUKASIEWICZ).is_tautology
    v = tautology_check(Impl(X0, Star(X0, X0)), LUKASIEWICZ)
    assert v.status == "countermodel"
    assert evaluate(Impl(X0, Star(X0, X0)), LUKASIEWICZ, v.point) != 1


def test_tautology_grid_method():
    v = tautology_check(Impl(Neg(Neg(X0)), X0), PRODUCT, method="grid")
    assert v.status == "countermodel"
    v = tautology_check(Impl(X0, X0), PRODUCT, method="grid")
    assert v.status == "unknown"
    v = tautology_check(Impl(X0, Star(X0, X0)), GODEL, method="grid")
    assert v.status == "unknown"


def test_methods_agree_on_lukasiewicz():
    rng = random.Random(23)
    for _ in range(60):
        f = rand_formula(rng, 2, 3)
        exact = tautology_check(f, LUKASIEWICZ, method="exact-pwl")
        grid = tautology_check(f, LUKASIEWICZ, method="grid", grid_bound=4)
        if grid.status == "countermodel":
            assert exact.status == "countermodel"
        if exact.is_tautology:
            assert grid.status != "countermodel"


def test_identity_check():
    assert identity_check(And(X0, X1), And(X1, X0), LUKASIEWICZ).is_tautology
    assert identity_check(Neg(Neg(X0)), X0, LUKASIEWICZ).is_tautology
    v = identity_check(X0, OPlus(X0, X0), LUKASIEWICZ)
    assert v.status == "countermodel"
    p = v.point
    assert evaluate(X0, LUKASIEWICZ, p) != evaluate(OPlus(X0, X0), LUKASIEWICZ, p)


def test_rationals_up_to():
    assert rationals_up_to(3) == [F(0), F(1, 3), F(1, 2), F(2, 3), F(1)]


# -- substitutions ------------------------------------------------------------------

def test_substitution_apply():
    sigma = Substitution([Neg(X0), Star(X0, X1)])
    assert apply_substitution(sigma, Impl(X0, X1)) == Impl(Neg(X0), Star(X0, X1))
    assert apply_substitution(sigma, ONE) == ONE


def test_substitution_arity_guard():
    sigma = Substitution([Neg(X0)])
    with pytest.raises(ValueError):
        apply_substitution(sigma, Star(X0, X1))


def test_substitution_identity_law():
    rng = random.Random(5)
    ident = Substitution.identity(3)
    for _ in range(50):
        f = rand_formula(rng, 3, 3)
        assert apply_substitution(ident, f) == f


def test_composition_matches_sequential_application():
    rng = random.Random(9)
    for _ in range(40):
        sigma = Substitution([rand_formula(rng, 2, 2) for _ in range(2)])
        tau = Substitution([rand_formula(rng, 2, 2) for _ in range(2)])
        comp = compose_substitutions(sigma, tau)
        f = rand_formula(rng, 2, 3)
        assert apply_substitution(comp, f) == \
            apply_substitution(sigma, apply_substitution(tau, f))


def test_substitution_semantics_is_composition():
    rng = random.Random(13)
    for _ in range(60):
        sigma = Substitution([rand_formula(rng, 2, 2) for _ in range(2)])
        f = rand_formula(rng, 2, 3)
        p = rand_point(rng, 2)
        image = tuple(evaluate(g, LUKASIEWICZ, p) for g in sigma.images)
        assert evaluate(apply_substitution(sigma, f), LUKASIEWICZ, p) == \
            evaluate(f, LUKASIEWICZ, image)
