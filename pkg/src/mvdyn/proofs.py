"""Frege proof objects, proof checking, axiom sets, and semantic MP-consequence.

A proof is a sequence of lines, each carrying a formula and a justification:
an axiom, a hypothesis, Modus Ponens from two earlier lines, or a substitution
instance of an earlier line. Formulas are compared modulo desugaring, so a
line may use any mix of the defined connectives.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from typing import Callable, Iterable, Optional, Sequence, Union

from .formula import (
    Formula, Var, Star, Impl, ZERO, ONE, Substitution, apply_substitution,
    arity_of, evaluate, parse_formula, print_formula, tautology_check,
    TNormSemantics, GODEL, PRODUCT, LUKASIEWICZ, BOOLE, chain_semantics,
)
from .algebra import filter_generated, is_filter  # noqa: F401  (part of this module's surface)


# -- proof objects -----------------------------------------------------------------

@dataclass(frozen=True)
class Axiom:
    pass


@dataclass(frozen=True)
class Hypothesis:
    index: int


@dataclass(frozen=True)
class ModusPonens:
    premise: int        # line index holding a
    implication: int    # line index holding a -> b


@dataclass(frozen=True)
class Substituted:
    line: int
    sigma: Substitution


Justification = Union[Axiom, Hypothesis, ModusPonens, Substituted]


@dataclass(frozen=True)
class ProofLine:
    formula: Formula
    justification: Justification


@dataclass(frozen=True)
class Proof:
    hypotheses: tuple
    lines: tuple

    def __len__(self) -> int:
        return len(self.lines)

    @property
    def conclusion(self) -> Formula:
        if not self.lines:
            raise ValueError("empty proof")
        return self.lines[-1].formula


@dataclass(frozen=True)
class ProofVerdict:
    valid: bool
    line: Optional[int] = None      # first failing line, 0-based
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.valid


# -- axiom sets ----------------------------------------------------------------------

_THETA_TEXT = (
    "((x0 -> x1) * (x1 -> x2)) -> (x0 -> x2)",
    "(x0 * x1) -> x0",
    "0 -> x0",
    "(x0 * x1) -> (x1 * x0)",
    "(x0 & x1) -> (x1 & x0)",
    "(x0 -> (x1 -> x2)) -> ((x0 * x1) -> x2)",
    "((x0 * x1) -> x2) -> (x0 -> (x1 -> x2))",
    "(((x0 -> x1) -> x2) * ((x1 -> x0) -> x2)) -> x2",
)

_EXTENSION_TEXT = {
    "mv": ("!!x0 -> x0",),
    "product": ("!!x0 -> ((x1 * x0 -> x2 * x0) -> (x1 -> x2))",
                "!(x0 & !x0)"),
    "godel": ("x0 -> (x0 * x0)",),
    "boole": ("x0 | !x0",),
}

_LOGIC_SEMANTICS = {
    "mv": LUKASIEWICZ,
    "product": PRODUCT,
    "godel": GODEL,
    "boole": BOOLE,
}


@dataclass(frozen=True)
class AxiomSet:
    logic: str
    schemas: tuple

    @property
    def semantics(self) -> TNormSemantics:
        return _LOGIC_SEMANTICS[self.logic]


def builtin_axioms(logic: str) -> AxiomSet:
    """The eight shared schemas plus the extension for the chosen logic."""
    key = logic.lower()
    if key not in _EXTENSION_TEXT:
        raise ValueError("logic must be one of MV, Product, Godel, Boole")
    texts = _THETA_TEXT + _EXTENSION_TEXT[key]
    return AxiomSet(key, tuple(parse_formula(t) for t in texts))


def is_instance_of(schema: Formula, f: Formula) -> bool:
    """Whether f is a substitution instance of the schema (modulo desugaring)."""
    binding: dict[int, Formula] = {}

    def match(s: Formula, t: Formula) -> bool:
        op = s.op
        if op == "var":
            bound = binding.get(s.index)
            if bound is None:
                binding[s.index] = t
                return True
            return bound == t
        if op in ("zero", "one"):
            return t.op == op
        return (t.op == op and match(s.args[0], t.args[0])
                and match(s.args[1], t.args[1]))

    return match(schema.core(), f.core())


def _oracle_accepts(oracle, f: Formula) -> bool:
    if callable(oracle):
        return bool(oracle(f))
    if oracle == "boole":
        return tautology_check(f, BOOLE).is_tautology
    if oracle == "lukasiewicz":
        if arity_of(f) > 2:
            return False
        return tautology_check(f, LUKASIEWICZ, method="exact-pwl").is_tautology
    raise ValueError(f"unknown axiom oracle {oracle!r}")


def check_proof(proof: Proof, axioms: Optional[AxiomSet] = None,
                oracle: Union[None, str, Callable[[Formula], bool]] = None,
                strict: bool = False) -> ProofVerdict:
    """Validate every line; strict mode requires axiom lines to be schemas
    verbatim (substitution then only enters through the substitution rule)."""
    lines = proof.lines
    for idx, line in enumerate(lines):
        j = line.justification
        if isinstance(j, Hypothesis):
            if not (0 <= j.index < len(proof.hypotheses)):
                return ProofVerdict(False, idx, f"no hypothesis {j.index + 1}")
            if line.formula != proof.hypotheses[j.index]:
                return ProofVerdict(False, idx,
                                    f"line differs from hypothesis {j.index + 1}")
        elif isinstance(j, Axiom):
            ok = False
            if axioms is not None:
                if strict:
                    ok = any(line.formula == s for s in axioms.schemas)
                else:
                    ok = any(is_instance_of(s, line.formula) for s in axioms.schemas)
            if not ok and oracle is not None:
                ok = _oracle_accepts(oracle, line.formula)
            if not ok:
                return ProofVerdict(False, idx, "not an accepted axiom")
        elif isinstance(j, ModusPonens):
            k, m = j.premise, j.implication
            if not (0 <= k < idx and 0 <= m < idx):
                return ProofVerdict(False, idx, "MP references a later or missing line")
            imp = lines[m].formula.core()
            if imp.op != "impl" or imp.args[0] != lines[k].formula \
                    or imp.args[1] != line.formula:
                return ProofVerdict(
                    False, idx,
                    f"line {m + 1} is not an implication from line {k + 1} to this line")
        elif isinstance(j, Substituted):
            if not (0 <= j.line < idx):
                return ProofVerdict(False, idx,
                                    "substitution references a later or missing line")
            try:
                image = apply_substitution(j.sigma, lines[j.line].formula)
            except ValueError as exc:
                return ProofVerdict(False, idx, str(exc))
            if image != line.formula:
                return ProofVerdict(False, idx,
                                    f"not the given substitution instance of line {j.line + 1}")
        else:
            return ProofVerdict(False, idx, "unknown justification")
    return ProofVerdict(True)


# -- semantic MP-consequence -----------------------------------------------------------

@dataclass(frozen=True)
class ConsequenceVerdict:
    status: str                       # "yes", "no", or "unknown"
    certificate: Optional[dict] = None
    countermodel: Optional[tuple] = None


def _min_over_unit_set(cw, rw):
    """(min of rw over {cw = 1}, witness point), or (None, None) if empty."""
    from . import pwl as _pwl

    refined, tags = _pwl._refine_tagged(cw.complex, rw.complex)
    best = None
    witness = None
    for jcell in range(len(refined.cells)):
        i1, i2 = tags[jcell]
        cp, rp = cw.pieces[i1], rw.pieces[i2]
        pts = refined.cell_points(jcell)
        vals = [cp.value(p) for p in pts]
        if all(v == 1 for v in vals):
            cand = pts
        elif any(v == 1 for v in vals):
            if refined.dim == 1:
                cand = [p for p, v in zip(pts, vals) if v == 1]
            else:
                # the affine piece attains its maximum 1 on a face of the cell
                hp = (Fraction(cp.a[0]), Fraction(cp.a[1]), Fraction(cp.b - 1))
                cand = _pwl._clip(list(pts), hp)
        else:
            continue
        for p in cand:
            v = rp.value(p)
            if best is None or v < best:
                best, witness = v, p
    return best, witness


def mp_consequence(delta: Sequence[Formula], r: Formula, sem: TNormSemantics,
                   star_power_bound: int = 64) -> ConsequenceVerdict:
    """Does some product of hypotheses lie below r, as functions?

    On a finite chain this is decided by checking that every valuation making
    all of delta equal to 1 also makes r equal to 1. Over the Lukasiewicz
    interval (at most two variables) a direct search for a bounded product
    witness runs after the same valuation check, which is complete for "no".
    """
    delta = list(delta)
    arity = max([arity_of(r)] + [arity_of(d) for d in delta])
    if sem.kind == "chain":
        carrier = sem.carrier()
        if len(carrier) ** arity > 2_000_000:
            raise ValueError("finite valuation space too large")
        satisfying = 0
        for p in itertools.product(carrier, repeat=arity):
            if all(evaluate(d, sem, p) == 1 for d in delta):
                satisfying += 1
                if evaluate(r, sem, p) != 1:
                    return ConsequenceVerdict("no", countermodel=p)
        return ConsequenceVerdict(
            "yes", certificate={"method": "finite-valuations",
                                "satisfying_assignments": satisfying})
    if sem.kind != "lukasiewicz":
        raise ValueError("no decidable backend for this semantics")
    if arity > 2:
        raise ValueError("the exact backend handles at most two variables")
    from . import pwl as _pwl

    dim = max(arity, 1)
    conj = reduce(Star, delta) if delta else ONE
    cw = _pwl.pwl_from_formula(conj, dim)
    rw = _pwl.pwl_from_formula(r, dim)
    low, witness = _min_over_unit_set(cw, rw)
    if low is not None and low < 1:
        return ConsequenceVerdict("no", countermodel=witness)
    power = cw
    for k in range(1, star_power_bound + 1):
        if _pwl.pwl_le(power, rw):
            return ConsequenceVerdict(
                "yes", certificate={"method": "product-search", "power": k})
        power = _pwl.pwl_combine("star", power, cw)
    return ConsequenceVerdict("unknown")


# -- JSON lines exchange -----------------------------------------------------------------

def _sigma_to_json(sigma: Substitution) -> dict:
    return {f"x{i}": print_formula(g) for i, g in enumerate(sigma.images)}


def _sigma_from_json(obj: dict) -> Substitution:
    from .formula import variables_of

    entries = {}
    for key, text in obj.items():
        if not key.startswith("x") or not key[1:].isdigit():
            raise ValueError(f"bad substitution key {key!r}")
        entries[int(key[1:])] = parse_formula(text)
    arity = max(entries) + 1 if entries else 0
    for g in entries.values():
        vs = variables_of(g)
        if vs:
            arity = max(arity, max(vs) + 1)
    images = [entries.get(i, Var(i)) for i in range(arity)]
    return Substitution(images)


def proof_to_jsonl(proof: Proof) -> str:
    """One JSON object per line; indices are 1-based on the wire."""
    out = []
    for line in proof.lines:
        j = line.justification
        if isinstance(j, Axiom):
            just = "axiom"
        elif isinstance(j, Hypothesis):
            just = {"hyp": j.index + 1}
        elif isinstance(j, ModusPonens):
            just = {"mp": [j.premise + 1, j.implication + 1]}
        else:
            just = {"subst": {"line": j.line + 1, "sigma": _sigma_to_json(j.sigma)}}
        out.append(json.dumps({"formula": print_formula(line.formula), "just": just},
                              sort_keys=True))
    return "\n".join(out) + ("\n" if out else "")


def proof_from_jsonl(text: str, hypotheses: Sequence[Formula] = ()) -> Proof:
    lines = []
    for raw in text.splitlines():
        raw = raw.strip()
        if not raw:
            continue
        obj = json.loads(raw)
        formula = parse_formula(obj["formula"])
        j = obj["just"]
        if j == "axiom":
            just: Justification = Axiom()
        elif isinstance(j, dict) and "hyp" in j:
            just = Hypothesis(int(j["hyp"]) - 1)
        elif isinstance(j, dict) and "mp" in j:
            k, m = j["mp"]
            just = ModusPonens(int(k) - 1, int(m) - 1)
        elif isinstance(j, dict) and "subst" in j:
            just = Substituted(int(j["subst"]["line"]) - 1,
                               _sigma_from_json(j["subst"]["sigma"]))
        else:
            raise ValueError(f"unknown justification {j!r}")
        lines.append(ProofLine(formula, just))
    return Proof(tuple(hypotheses), tuple(lines))
