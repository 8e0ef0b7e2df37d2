"""Machine-checked exponent ledgers for the essential-minimum bounds.

Quantities are formal positive monomials whose exponents are affine in a
single parameter ``eta``.  A ledger is a chain ``E_0 REL E_1 REL ...`` where
each link carries a certificate:

* ``("rel", name, e)``  a defining relation ``lhs/rhs = 1`` raised to ``e``;
* ``("rule", name, base, e)``  a declared fact ``base >= 1`` (or ``>> 1``)
  raised to an exponent ``e`` that must be nonnegative.

A link ``E_k / E_{k+1}`` must equal the product of its certificate.  For a
``>>`` link the leftover may also contain constant symbols (absorbed into the
implied constant).  :func:`naive_verify` re-checks every link by substituting
the relations in sympy and expanding logarithms.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence, Union

import sympy

from .errors import BadDimensions, DomainValueError, EmptyFactorList
from .intervals import power_enclosure
from .orders import rational_to_str

Base = Union[str, int]


# ---------------------------------------------------------------- algebra
@dataclass(frozen=True)
class Affine:
    """``c0 + c1 * eta``."""

    c0: Fraction = Fraction(0)
    c1: Fraction = Fraction(0)

    def __post_init__(self):
        object.__setattr__(self, "c0", Fraction(self.c0))
        object.__setattr__(self, "c1", Fraction(self.c1))

    @classmethod
    def of(cls, x) -> Affine:
        if isinstance(x, Affine):
            return x
        return cls(Fraction(x), Fraction(0))

    @property
    def is_const(self) -> bool:
        return self.c1 == 0

    def __add__(self, other) -> Affine:
        o = Affine.of(other)
        return Affine(self.c0 + o.c0, self.c1 + o.c1)

    __radd__ = __add__

    def __neg__(self) -> Affine:
        return Affine(-self.c0, -self.c1)

    def __sub__(self, other) -> Affine:
        return self + (-Affine.of(other))

    def __rsub__(self, other) -> Affine:
        return Affine.of(other) - self

    def __mul__(self, other) -> Affine:
        o = Affine.of(other)
        if not (self.is_const or o.is_const):
            raise DomainValueError("product of two eta-dependent exponents is not affine")
        return Affine(self.c0 * o.c0, self.c0 * o.c1 + self.c1 * o.c0)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.c0 or self.c1)

    def at(self, eta) -> Fraction:
        return self.c0 + self.c1 * Fraction(eta)

    def nonnegative(self, eta) -> bool:
        """At the given ``eta``, or for every ``eta > 0`` when ``eta`` is None."""
        if eta is None:
            return self.c0 >= 0 and self.c1 >= 0
        return self.at(eta) >= 0

    def to_sympy(self, eta_sym):
        return sympy.Rational(self.c0.numerator, self.c0.denominator) + sympy.Rational(
            self.c1.numerator, self.c1.denominator
        ) * eta_sym

    def __str__(self) -> str:
        if self.is_const:
            return rational_to_str(self.c0)
        lin = "eta" if abs(self.c1) == 1 else "%s*eta" % rational_to_str(abs(self.c1))
        if self.c0 == 0:
            return lin if self.c1 > 0 else "-" + lin
        return "%s %s %s" % (rational_to_str(self.c0), "+" if self.c1 > 0 else "-", lin)


ETA = Affine(Fraction(0), Fraction(1))


def _prime_factors(n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


class Monomial:
    """Product of symbols and primes with affine exponents; immutable."""

    __slots__ = ("powers",)

    def __init__(self, powers: dict | None = None):
        self.powers = {b: Affine.of(e) for b, e in (powers or {}).items() if Affine.of(e)}

    @classmethod
    def sym(cls, name: str, e=1) -> Monomial:
        return cls({name: e})

    @classmethod
    def num(cls, value, e=1) -> Monomial:
        v = Fraction(value)
        if v <= 0:
            raise DomainValueError("numeric bases must be positive")
        e = Affine.of(e)
        powers: dict = {}
        for p, k in _prime_factors(v.numerator).items():
            powers[p] = e * k
        for p, k in _prime_factors(v.denominator).items():
            powers[p] = e * (-k)
        return cls(powers)

    def __mul__(self, other: Monomial) -> Monomial:
        out = dict(self.powers)
        for b, e in other.powers.items():
            out[b] = out.get(b, Affine()) + e
        return Monomial(out)

    def __truediv__(self, other: Monomial) -> Monomial:
        return self * other ** -1

    def __pow__(self, e) -> Monomial:
        e = Affine.of(e)
        return Monomial({b: x * e for b, x in self.powers.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, Monomial) and self.powers == other.powers

    def __hash__(self) -> int:
        return hash(frozenset(self.powers.items()))

    def is_one(self) -> bool:
        return not self.powers

    def bases(self) -> set:
        return set(self.powers)

    def exponent(self, base: Base) -> Affine:
        return self.powers.get(base, Affine())

    def to_sympy(self, eta_sym, symbols: dict):
        out = sympy.Integer(1)
        for b, e in sorted(self.powers.items(), key=lambda kv: str(kv[0])):
            base = symbols[b] if isinstance(b, str) else sympy.Symbol("prime_%d" % b, positive=True)
            out *= base ** e.to_sympy(eta_sym)
        return out

    def __str__(self) -> str:
        if not self.powers:
            return "1"
        parts = []
        for b, e in sorted(self.powers.items(), key=lambda kv: (isinstance(kv[0], int), str(kv[0]))):
            parts.append(str(b) if e == Affine.of(1) else "%s^(%s)" % (b, e))
        return " * ".join(parts)

    __repr__ = __str__


def M(name: str, e=1) -> Monomial:
    return Monomial.sym(name, e)


ONE = Monomial()


# ---------------------------------------------------------------- ledger types
@dataclass(frozen=True)
class Symbol:
    name: str
    meaning: str
    constant: bool = False


@dataclass(frozen=True)
class Relation:
    """``symbol = expr`` (both positive formal quantities)."""

    name: str
    symbol: str
    expr: Monomial
    justification: str

    @property
    def monomial(self) -> Monomial:
        return M(self.symbol) / self.expr


@dataclass(frozen=True)
class Rule:
    """A declared inequality ``base >= 1`` (``strength='>='``) or ``base >> 1``."""

    name: str
    strength: str
    statement: str


@dataclass
class LedgerStep:
    lhs: Monomial
    relation: str
    rhs: Monomial
    justification: str
    certificate: list = field(default_factory=list)
    verdict: str = "unchecked"
    note: str = ""

    def to_json(self) -> dict:
        cert = []
        for c in self.certificate:
            if c[0] == "rel":
                cert.append({"relation": c[1], "exponent": str(c[2])})
            else:
                cert.append({"rule": c[1], "base": str(c[2]), "exponent": str(c[3])})
        return {
            "lhs": str(self.lhs),
            "relation": self.relation,
            "rhs": str(self.rhs),
            "justification": self.justification,
            "certificate": cert,
            "verdict": self.verdict,
        }


@dataclass
class LedgerTrace:
    theorem: str
    params: dict
    symbols: dict[str, Symbol]
    relations: dict[str, Relation]
    rules: dict[str, Rule]
    steps: list[LedgerStep]
    eta: Fraction | None
    final: dict = field(default_factory=dict)
    corollary: list[LedgerStep] = field(default_factory=list)
    flags: list[str] = field(default_factory=list)

    @property
    def all_steps(self) -> list[LedgerStep]:
        return self.steps + self.corollary

    @property
    def proven(self) -> bool:
        return all(s.verdict == "proven" for s in self.all_steps)

    def to_json(self) -> dict:
        def final_json(v):
            if isinstance(v, (Affine, Fraction)):
                return str(v) if isinstance(v, Affine) else rational_to_str(v)
            if isinstance(v, dict):
                return {k: final_json(x) for k, x in v.items()}
            if isinstance(v, (list, tuple)):
                return [final_json(x) for x in v]
            if hasattr(v, "to_json"):
                return v.to_json()
            return v

        return {
            "theorem": self.theorem,
            "params": final_json(self.params),
            "eta": None if self.eta is None else rational_to_str(self.eta),
            "symbols": {k: {"meaning": s.meaning, "constant": s.constant} for k, s in self.symbols.items()},
            "relations": [
                {"name": r.name, "statement": "%s = %s" % (r.symbol, r.expr), "justification": r.justification}
                for r in self.relations.values()
            ],
            "rules": [{"name": r.name, "strength": r.strength, "statement": r.statement} for r in self.rules.values()],
            "steps": [s.to_json() for s in self.steps],
            "corollary": [s.to_json() for s in self.corollary],
            "final": final_json(self.final),
            "flags": list(self.flags),
            "proven": self.proven,
        }


# ---------------------------------------------------------------- verification
def _is_constant_monomial(m: Monomial, symbols: dict[str, Symbol]) -> bool:
    return all(isinstance(b, int) or symbols[b].constant for b in m.bases())


def check_step(step: LedgerStep, trace: LedgerTrace) -> bool:
    """Main route: exact monomial arithmetic against the certificate."""
    ratio = step.lhs / step.rhs
    strengths = set()
    for c in step.certificate:
        if c[0] == "rel":
            ratio = ratio / trace.relations[c[1]].monomial ** c[2]
        else:
            _, name, base, e = c
            e = Affine.of(e)
            if not e.nonnegative(trace.eta):
                return False
            strengths.add(trace.rules[name].strength)
            ratio = ratio / base ** e
    if step.relation == "=":
        return not strengths and ratio.is_one()
    if step.relation == ">=":
        return ">>" not in strengths and ratio.is_one()
    if step.relation == ">>":
        return _is_constant_monomial(ratio, trace.symbols)
    return False


def verify(trace: LedgerTrace) -> LedgerTrace:
    for s in trace.all_steps:
        s.verdict = "proven" if check_step(s, trace) else "failed"
    return trace


def naive_verify(trace: LedgerTrace) -> list[bool]:
    """Independent re-check through sympy: substitute every relation until
    fixpoint, expand logarithms, subtract the declared rule factors and look
    at what is left."""
    eta = sympy.Symbol("eta", positive=True)
    eta_val = None if trace.eta is None else sympy.Rational(trace.eta.numerator, trace.eta.denominator)
    syms = {name: sympy.Symbol(name, positive=True) for name in trace.symbols}
    subs = {syms[r.symbol]: r.expr.to_sympy(eta, syms) for r in trace.relations.values()}

    def expand(expr):
        for _ in range(len(subs) + 2):
            new = expr.subs(subs)
            if new == expr:
                break
            expr = new
        if eta_val is not None:
            expr = expr.subs(eta, eta_val)
        return sympy.expand(sympy.expand_log(sympy.log(expr), force=True))

    constant_logs = {sympy.log(syms[n]): 0 for n, s in trace.symbols.items() if s.constant}
    out = []
    for step in trace.all_steps:
        diff = expand(step.lhs.to_sympy(eta, syms)) - expand(step.rhs.to_sympy(eta, syms))
        ok = True
        kinds = set()
        for c in step.certificate:
            if c[0] == "rel":
                continue
            _, name, base, e = c
            e_s = Affine.of(e).to_sympy(eta)
            if eta_val is not None:
                ok = ok and bool(e_s.subs(eta, eta_val) >= 0)
            else:
                coeffs = sympy.Poly(e_s, eta).all_coeffs()
                ok = ok and all(x >= 0 for x in coeffs)
            kinds.add(trace.rules[name].strength)
            diff -= sympy.expand(e_s.subs(eta, eta_val) if eta_val is not None else e_s) * expand(
                base.to_sympy(eta, syms)
            )
        diff = sympy.expand(diff)
        if step.relation == ">>":
            prime_logs = {a: 0 for a in diff.atoms(sympy.log) if str(a.args[0]).startswith("prime_")}
            diff = sympy.expand(diff.subs(constant_logs).subs(prime_logs))
        elif step.relation == "=" and kinds:
            ok = False
        elif step.relation == ">=" and ">>" in kinds:
            ok = False
        out.append(ok and sympy.simplify(diff) == 0)
    return out


# ---------------------------------------------------------------- rules on mu
def mu_rules(kind: str, args: dict | None = None) -> dict:
    """Formal rules for the essential minimum.

    ``pullback-eq``   ``mu_{phi^*L}(Y) = mu_L(phi(Y))``
    ``power-eq``      ``mu_{L^m}(Y) = m * mu_L(Y)``  (args: ``m``, optional ``symbol``)
    ``tensor-superadd``  ``mu_{L_1 (x) ... (x) L_k}(Y) >= sum_i mu_{L_i}(Y)``  (args: ``k``)
    """
    args = args or {}
    if kind == "pullback-eq":
        phi, y = args.get("phi", "phi"), args.get("Y", "Y")
        return {
            "kind": kind,
            "relation": "=",
            "lhs": "mu_{%s^*L}(%s)" % (phi, y),
            "rhs": "mu_L(%s(%s))" % (phi, y),
        }
    if kind == "power-eq":
        m = args.get("m")
        if not isinstance(m, int) or m < 1:
            raise DomainValueError("power-eq needs an integer m >= 1")
        s = args.get("symbol", "mu")
        return {
            "kind": kind,
            "relation": "=",
            "lhs": "%s[L^%d]" % (s, m),
            "rhs": Monomial.num(m) * M(s),
        }
    if kind == "tensor-superadd":
        k = args.get("k", 2)
        if not isinstance(k, int) or k < 1:
            raise DomainValueError("tensor-superadd needs k >= 1 summands")
        return {
            "kind": kind,
            "relation": ">=",
            "lhs": "mu_{%s}(Y)" % " (x) ".join("L_%d" % i for i in range(1, k + 1)),
            "rhs": " + ".join("mu_{L_%d}(Y)" % i for i in range(1, k + 1)),
            "summands": k,
        }
    raise DomainValueError("unknown rule kind %r" % (kind,))


def translation_rule() -> dict:
    """The height inequality used to pass from subgroups to their translates."""
    return {
        "kind": "translate",
        "relation": "<=",
        "statement": "h(x - q) <= 2 h(x) + 2 h(q) <= theta  when h(x), h(q) <= theta/4",
    }


# ---------------------------------------------------------------- isogeny chain
def _eta_arg(eta) -> Fraction | None:
    if eta is None:
        return None
    v = Fraction(eta)
    if v <= 0:
        raise DomainValueError("eta must be positive, got %s" % v)
    return v


def thm28_ledger(g: int, d: int, eta=None) -> LedgerTrace:
    """Exponent bookkeeping for pulling the Bogomolov bound back along an isogeny.

    ``g = dim B``, ``d = dim Y``.  With ``eta=None`` the exponents stay symbolic.
    """
    if not (isinstance(g, int) and isinstance(d, int)) or not 0 < d < g:
        raise BadDimensions("need 0 < d < g, got g=%r, d=%r" % (g, d))
    eta_v = _eta_arg(eta)
    c = g - d
    e = Affine(Fraction(1, c), Fraction(1))  # 1/(g-d) + eta

    symbols = {s.name: s for s in [
        Symbol("a", "|a|, least dual multiplier: phi phihat = phihat phi = [a]"),
        Symbol("kphi", "|ker phi| = deg phi"),
        Symbol("khat", "|ker phihat|"),
        Symbol("degLB", "deg_L B", constant=True),
        Symbol("degLW", "deg_L W, W a component of phihat^-1(Y)"),
        Symbol("degLphiY", "deg_L phi(Y)"),
        Symbol("pushY", "deg_L phi_*(Y)"),
        Symbol("stabW", "|Stab W cap ker[a]|"),
        Symbol("stabY", "|Stab Y cap ker phi|"),
        Symbol("degpB", "deg_{phi^*L} B"),
        Symbol("degpY", "deg_{phi^*L} Y"),
        Symbol("muW", "mu_L(W)"),
        Symbol("muLphiY", "mu_L(phi(Y))"),
        Symbol("mupY", "mu_{phi^*L}(Y)"),
        Symbol("C", "constant of the effective Bogomolov bound", constant=True),
    ]}
    a = M("a")
    relations = {r.name: r for r in [
        Relation("dual", "khat", a ** (2 * g) / M("kphi"), "|ker phihat| |ker phi| = |a|^(2g)"),
        Relation("pullback_degree", "degpB", M("kphi") * M("degLB"), "deg_{phi^*L} B = |ker phi| deg_L B"),
        Relation("stab_dual", "stabW", M("khat") * M("stabY"), "stabilizer identity for phihat^-1(Y)"),
        Relation("pushforward", "pushY", M("stabY") * M("degLphiY"), "deg phi_*(Y) = |Stab Y cap ker phi| deg phi(Y)"),
        Relation("projection", "degpY", M("pushY"), "deg_{phi^*L} Y = deg_L phi_*(Y)"),
        Relation("image_degree", "degLW", M("stabW") * a ** (-2 * d) * M("degLphiY"), "deg_L [a]W = |a|^(2d) deg_L W / |Stab W cap ker[a]|"),
        Relation("mu_pullback", "mupY", M("muLphiY"), "pullback-eq"),
        Relation("mu_scalar", "muLphiY", a ** 2 * M("muW"), "phi(Y) = [a]W and power-eq with m = a^2"),
    ]}
    rules = {r.name: r for r in [
        Rule("bogomolov_W", ">>", "mu_L(W) >> deg_L(W)^-(1/(g-d)+eta), W transverse of codimension g-d"),
        Rule("degree_at_least_one", ">=", "degrees of subvarieties are >= 1"),
        Rule("a_le_deg_phi", ">=", "|a| <= deg phi = |ker phi|"),
    ]}

    E0 = M("mupY")
    E1 = a ** 2 * M("muW")
    E2 = a ** 2 * M("C") * M("degLW") ** (-e)
    E3 = a ** 2 * M("C") * (a ** (2 * d) / (M("khat") * M("pushY"))) ** e
    E4 = a ** 2 * (a ** (2 * d) * M("degLB") / (M("khat") * M("pushY"))) ** e * M("degLB") ** (-ETA)
    E5 = (M("degpB") / M("degpY")) ** e * M("degLB") ** (-ETA) * a ** (-2 * c * ETA)
    E6 = M("degpB") ** (e - 2 * c * ETA) * M("degpY") ** (-e)

    steps = [
        LedgerStep(E0, "=", E1, "pullback-eq; [a]W = phi(Y); power-eq",
                   [("rel", "mu_pullback", 1), ("rel", "mu_scalar", 1)]),
        LedgerStep(E1, ">>", E2, "effective Bogomolov bound applied to W",
                   [("rule", "bogomolov_W", M("muW") * M("degLW") ** e / M("C"), 1)]),
        LedgerStep(E2, "=", E3, "deg_L W = |ker phihat| |a|^(-2d) deg_L phi_*(Y)",
                   [("rel", "image_degree", -e), ("rel", "stab_dual", -e), ("rel", "pushforward", e)]),
        LedgerStep(E3, ">>", E4, "absorbing a power of deg_L B into the implied constant", []),
        LedgerStep(E4, "=", E5, "|ker phihat| |ker phi| = |a|^(2g); deg_{phi^*L} B = deg phi deg_L B",
                   [("rel", "dual", -e), ("rel", "pullback_degree", -e), ("rel", "projection", e)]),
        LedgerStep(E5, ">=", E6, "|a| <= deg phi and deg_L B >= 1",
                   [("rel", "pullback_degree", 2 * c * ETA),
                    ("rule", "degree_at_least_one", M("degLB"), (2 * c - 1) * ETA),
                    ("rule", "a_le_deg_phi", M("kphi") / a, 2 * c * ETA)]),
    ]

    # rerun the chain with eta/(2(g-d)) to get the symmetric form in eta
    es = Affine(Fraction(1, c), Fraction(1, 2 * c))
    F0 = M("degpB") ** (es - ETA) * M("degpY") ** (-es)
    F1 = M("degpB") ** (Affine(Fraction(1, c), Fraction(-1))) * M("degpY") ** (-Affine(Fraction(1, c), Fraction(1)))
    corollary = [
        LedgerStep(F0, ">=", F1, "chain run at eta/(2(g-d)); degrees are >= 1",
                   [("rule", "degree_at_least_one", M("degpB"), Affine(0, Fraction(1, 2 * c))),
                    ("rule", "degree_at_least_one", M("degpY"), Affine(0, 1 - Fraction(1, 2 * c)))]),
    ]

    num = E6.exponent("degpB")
    den = -E6.exponent("degpY")
    final = {
        "numerator_exponent": num if eta_v is None else num.at(eta_v),
        "denominator_exponent": den if eta_v is None else den.at(eta_v),
        "numerator_form": num,
        "denominator_form": den,
        "rescaled_numerator_exponent": Affine(Fraction(1, c), -1) if eta_v is None else Fraction(1, c) - eta_v,
        "rescaled_denominator_exponent": Affine(Fraction(1, c), 1) if eta_v is None else Fraction(1, c) + eta_v,
        "rescaled_eta": Affine(0, Fraction(1, 2 * c)) if eta_v is None else eta_v / (2 * c),
    }
    trace = LedgerTrace("2.8", {"g": g, "d": d, "codim": c}, symbols, relations, rules, steps, eta_v, final, corollary)
    return verify(trace)


def thm41_ledger(
    codim: int,
    eta,
    alphas: Sequence[int],
    binoms: Sequence[int],
    ns: Sequence[int] | None = None,
    dim_y: int = 1,
    degH=None,
    degY=None,
    precision: int = 128,
) -> LedgerTrace:
    """Bookkeeping of the product assembly.

    Per factor ``i``: the dual multiplier ``alpha_i``, the multiplicity
    ``binom_i = binom(N_i - 1, n_i - 1)`` and the rank ``n_i`` (default 1).
    The global multiplier is ``max alpha_i^2 binom_i``; the absorbed constant
    is ``(max binom_i^n_i)^-(1/codim - eta)``.
    """
    if not alphas or not binoms:
        raise EmptyFactorList("need at least one factor")
    ns = list(ns) if ns is not None else [1] * len(alphas)
    if not len(alphas) == len(binoms) == len(ns):
        raise DomainValueError("alphas, binoms and ns must have the same length")
    if any(int(x) < 1 for x in list(alphas) + list(binoms) + list(ns)):
        raise DomainValueError("factor data must be positive integers")
    if not isinstance(codim, int) or codim < 1:
        raise BadDimensions("codim must be a positive integer")
    if dim_y < 0:
        raise BadDimensions("dim Y must be >= 0")
    eta_v = _eta_arg(eta)
    alpha = max(int(a) ** 2 * int(b) for a, b in zip(alphas, binoms))
    binmax = max(int(b) ** int(n) for b, n in zip(binoms, ns))
    ep = Affine(Fraction(1, codim), Fraction(1))   # 1/codim + eta
    em = Affine(Fraction(1, codim), Fraction(-1))  # 1/codim - eta

    symbols = {s.name: s for s in [
        Symbol("muLY", "mu_L(Y)"),
        Symbol("muT", "mu of Phi_H(Y) for the tensor product of the Phi_I^* M"),
        Symbol("Ssum", "sum over I of mu_{Phi_I^* M}(Phi_H(Y))"),
        Symbol("Sbound", "sum over I of deg_I(A')^(1/codim-eta) / deg_I(Phi_H Y)^(1/codim+eta)"),
        Symbol("sumdegA", "sum over I of deg_{Phi_I^* M} A'"),
        Symbol("degTA", "degree of A' for the tensor product bundle"),
        Symbol("degTY", "degree of Phi_H(Y) for the tensor product bundle"),
        Symbol("degTpushH", "degree of Phi_H*(H) for the tensor product bundle"),
        Symbol("degLH", "deg_L H"),
        Symbol("degLY", "deg_L Y"),
    ]}
    rules = {r.name: r for r in [
        Rule("mu_alpha", ">=", "mu of Phi_H(Y) <= alpha mu_L(Y)  (line bundle equivalence, power-eq)"),
        Rule("tensor_superadd", ">=", "mu of a tensor product >= sum of the mu"),
        Rule("isogeny_bound", ">>", "per index I: the isogeny pullback bound"),
        Rule("ample_root", ">=", "deg_I <= deg_tensor for ample bundles; (sum x_i)^(1/m) <= sum x_i^(1/m)"),
        Rule("gael", ">=", "sum_I deg_I A' = deg_tensor A' / binom^n >= deg_tensor A' / max binom_i^n_i"),
        Rule("push", ">>", "deg A' >> deg Phi_H*(H)"),
        Rule("relchiave_H", ">=", "deg of Phi_H*(H) for the tensor bundle >= deg_L H"),
        Rule("relchiave_Y", ">=", "deg of Phi_H(Y) for the tensor bundle <= alpha^dimY deg_L Y"),
    ]}
    al = Monomial.num(alpha)
    bm = Monomial.num(binmax)
    flags = []
    if not (em.nonnegative(eta_v)):
        flags.append("nonpositive_degH_exponent")

    E0 = M("muLY")
    E1 = al ** -1 * M("muT")
    E2 = al ** -1 * M("Ssum")
    E3 = al ** -1 * M("Sbound")
    E4 = al ** -1 * M("sumdegA") ** em * M("degTY") ** (-ep)
    E5 = al ** -1 * bm ** (-em) * M("degTA") ** em * M("degTY") ** (-ep)
    E6 = al ** -1 * bm ** (-em) * M("degTpushH") ** em * M("degTY") ** (-ep)
    E7 = al ** -1 * bm ** (-em) * M("degLH") ** em * M("degTY") ** (-ep)
    E8 = al ** (-(1 + dim_y * ep)) * bm ** (-em) * M("degLH") ** em * M("degLY") ** (-ep)
    E9 = M("degLH") ** em * M("degLY") ** (-ep)
    steps = [
        LedgerStep(E0, ">=", E1, "mu after pullback by Phi_H is at most alpha mu_L(Y)",
                   [("rule", "mu_alpha", al * M("muLY") / M("muT"), 1)]),
        LedgerStep(E1, ">=", E2, "superadditivity of mu under tensor products",
                   [("rule", "tensor_superadd", M("muT") / M("Ssum"), 1)]),
        LedgerStep(E2, ">>", E3, "isogeny pullback bound for every Phi_I",
                   [("rule", "isogeny_bound", M("Ssum") / M("Sbound"), 1)]),
        LedgerStep(E3, ">=", E4, "ampleness and root subadditivity",
                   [("rule", "ample_root", M("Sbound") * M("sumdegA") ** (-em) * M("degTY") ** ep, 1)]),
        LedgerStep(E4, ">=", E5, "degree identity for the tensor product of the Phi_I^* M",
                   [("rule", "gael", M("sumdegA") * bm / M("degTA"), em)]),
        LedgerStep(E5, ">>", E6, "degree of the pushforward",
                   [("rule", "push", M("degTA") / M("degTpushH"), em)]),
        LedgerStep(E6, ">=", E7, "line bundle equivalence and projection formula on H",
                   [("rule", "relchiave_H", M("degTpushH") / M("degLH"), em)]),
        LedgerStep(E7, ">=", E8, "line bundle equivalence on Y with deg_{L^m} = m^d deg_L",
                   [("rule", "relchiave_Y", al ** dim_y * M("degLY") / M("degTY"), ep)]),
        LedgerStep(E8, ">>", E9, "alpha is bounded in terms of A and N only", []),
    ]

    alpha_exp = -(1 + dim_y * ep)
    absorption_exp = -em
    final = {
        "numerator_exponent": em if eta_v is None else em.at(eta_v),
        "denominator_exponent": ep if eta_v is None else ep.at(eta_v),
        "alpha": alpha,
        "binom_max": binmax,
        "constant_factors": [
            {"base": "alpha", "value": alpha, "exponent": alpha_exp if eta_v is None else alpha_exp.at(eta_v)},
            {"base": "binom_max", "value": binmax, "exponent": absorption_exp if eta_v is None else absorption_exp.at(eta_v)},
            {"base": "C", "value": "symbolic", "exponent": Fraction(1)},
        ],
        "tracked_factor": str(E8 / E9),
    }
    if eta_v is not None:
        a_lo, a_hi, a_ex = power_enclosure(1, [(binmax, absorption_exp.at(eta_v))], precision)
        final["absorption_constant"] = {"lower": a_lo, "upper": a_hi, "exact": a_ex}
        if degH is not None and degY is not None:
            lo, hi, ex = power_enclosure(
                1,
                [(alpha, alpha_exp.at(eta_v)), (binmax, absorption_exp.at(eta_v)),
                 (Fraction(degH), em.at(eta_v)), (Fraction(degY), -ep.at(eta_v))],
                precision,
            )
            final["value_over_C"] = {"lower": lo, "upper": hi, "exact": ex}
    params = {
        "codim": codim, "alphas": list(alphas), "binoms": list(binoms), "ns": ns, "dim_y": dim_y,
    }
    trace = LedgerTrace("4.1", params, symbols, {}, rules, steps, eta_v, final, [], flags)
    return verify(trace)


def ledger_exponents(trace: LedgerTrace) -> tuple:
    f = trace.final
    return f["numerator_exponent"], f["denominator_exponent"]
