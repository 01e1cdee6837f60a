"""Mirror potentials, their Jacobian ideals and the explicit Groebner family.

Variables are r1..rn, u1..un over Q. The potential is
    Zt = -u1*...*un + sum_j r_j u_j^a,
and Z is Zt with every r_j set to 1.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, product

from .exactpoly import (MonomialOrder, PolyRing, Polynomial, as_groebner_basis, buchberger, grlex,
                        is_groebner_basis, normal_form)
from .exactpoly.poly import divides


def _check_range(n, a):
    if n < 4 or not (2 <= a <= n - 1):
        raise ValueError("need n >= 4 and 2 <= a <= n-1, got n=%d a=%d" % (n, a))


def full_ring(n):
    return PolyRing(["r%d" % j for j in range(1, n + 1)] + ["u%d" % j for j in range(1, n + 1)])


def u_ring(n):
    return PolyRing(["u%d" % j for j in range(1, n + 1)])


def homlex_order(ring, n):
    """Homogeneous lex in u with u_i > u_j iff i > j; the r variables form a trailing block."""
    us = ["u%d" % j for j in range(n, 0, -1)]
    rs = ["r%d" % j for j in range(1, n + 1)]
    return MonomialOrder(ring, [("grlex", us), ("grlex", rs)], label="homlex")


def elimination_order(ring, n):
    rs = ["r%d" % j for j in range(1, n + 1)]
    us = ["u%d" % j for j in range(1, n + 1)]
    return MonomialOrder(ring, [("grlex", rs), ("grlex", us)], label="elim(r>u)")


@dataclass
class PotentialFamily:
    n: int
    a: int
    ring: PolyRing
    Zt: object
    partials: list
    uring: PolyRing
    Z: object
    Z_partials: list
    beta: object
    T: object

    def product_u(self):
        out = self.ring.one()
        for j in range(1, self.n + 1):
            out = out * self.ring.var("u%d" % j)
        return out


def build_potentials(n, a):
    _check_range(n, a)
    R = full_ring(n)
    u = [R.var("u%d" % j) for j in range(1, n + 1)]
    r = [R.var("r%d" % j) for j in range(1, n + 1)]
    prod_u = R.one()
    for x in u:
        prod_u = prod_u * x
    Zt = -prod_u
    for j in range(n):
        Zt = Zt + r[j] * u[j] ** a
    partials = [Zt.diff("u%d" % j) for j in range(1, n + 1)]
    U = u_ring(n)
    Z = _drop_r(Zt, n, U)
    Zp = [Z.diff("u%d" % j) for j in range(1, n + 1)]
    T = R.one()
    for x in r:
        T = T * x
    beta = r[0] * u[0] ** a
    return PotentialFamily(n, a, R, Zt, partials, U, Z, Zp, beta, T)


def _drop_r(p, n, U):
    """Specialize r_j = 1 and move to the ring in u only."""
    out = {}
    for e, c in p.terms.items():
        out[e[n:]] = out.get(e[n:], 0) + c
    return Polynomial(U, {e: c for e, c in out.items() if c != 0})


def closed_form_family(n, a, ring=None):
    """The three-shape Groebner family, in rescaled coordinates, initial term first.

    * u_{[n] minus 1} - r1 u1^(a-1)
    * r_j u_j^a - r1 u1^a for j != 1
    * (r1 u1^a)^(|Kbar|-1) u_K - r_Kbar u_Kbar^(a-1) for 1 in K, K a proper subset
    """
    R = ring or full_ring(n)
    u = {j: R.var("u%d" % j) for j in range(1, n + 1)}
    r = {j: R.var("r%d" % j) for j in range(1, n + 1)}

    def prod(xs):
        out = R.one()
        for x in xs:
            out = out * x
        return out

    fam = [prod(u[k] for k in range(2, n + 1)) - r[1] * u[1] ** (a - 1)]
    for j in range(2, n + 1):
        fam.append(r[j] * u[j] ** a - r[1] * u[1] ** a)
    rest = list(range(2, n + 1))
    for size in range(0, n - 1):
        for extra in combinations(rest, size):
            K = (1,) + extra
            Kbar = [j for j in range(1, n + 1) if j not in K]
            lead = (r[1] * u[1] ** a) ** (len(Kbar) - 1) * prod(u[k] for k in K)
            tail = prod(r[k] for k in Kbar) * prod(u[k] for k in Kbar) ** (a - 1)
            fam.append(lead - tail)
    return fam


def solve_rescaling(fam: PotentialFamily):
    """Diagonal rescaling u_j -> lam_j u_j, r_j -> rho_j r_j matching partials to the family.

    The rescaled partial j is -prod_{k != j} lam_k u_{[n]-j} + a rho_j lam_j^(a-1) r_j u_j^(a-1);
    proportionality to u_{[n]-j} - r_j u_j^(a-1) forces
    a rho_j lam_j^(a-1) = prod_{k != j} lam_k. Normalizing lam = 1 leaves rho_j = 1/a.
    """
    n, a = fam.n, fam.a
    lam = {j: Fraction(1) for j in range(1, n + 1)}
    rho = {}
    for j in range(1, n + 1):
        others = Fraction(1)
        for k in range(1, n + 1):
            if k != j:
                others *= lam[k]
        rho[j] = others / (a * lam[j] ** (a - 1))
    return lam, rho


def rescale(p, n, lam, rho):
    mapping = {}
    R = p.ring
    for j in range(1, n + 1):
        mapping["u%d" % j] = R.var("u%d" % j) * lam[j]
        mapping["r%d" % j] = R.var("r%d" % j) * rho[j]
    return p.substitute(mapping)


def verify_closed_form_groebner(n, a):
    fam = build_potentials(n, a)
    R = fam.ring
    order = homlex_order(R, n)
    family = closed_form_family(n, a, R)
    # the initial term of each element should be the one written first
    lead_ok = all(p.leading(order)[0] == next(iter(p.terms)) for p in family)
    ok, cert = is_groebner_basis(family, order)
    lam, rho = solve_rescaling(fam)
    rescaled = [rescale(p, n, lam, rho) for p in fam.partials]
    gb_family = as_groebner_basis(family, order) if ok else None
    contains_partials = ok and all(normal_form(p, gb_family).is_zero() for p in rescaled)
    direct = buchberger(rescaled, order)
    same = ok and [p.terms for p in direct.polys] == [p.terms for p in gb_family.polys]
    residual = [] if contains_partials else [
        str(normal_form(p, gb_family)) for p in rescaled] if ok else []
    return {
        "n": n,
        "a": a,
        "order": "homogeneous lex in u (u_i > u_j iff i > j), r block trailing",
        "family_size": len(family),
        "buchberger_criterion": ok,
        "spairs_checked": len(cert),
        "spairs_nonzero": sum(1 for c in cert if not c.remainder_zero),
        "rescaling": {"u": {"u%d" % j: str(v) for j, v in lam.items()},
                      "r": {"r%d" % j: str(v) for j, v in rho.items()}},
        "partials_in_family_ideal": contains_partials,
        "reduced_basis_of_partials_equals_family": same,
        "residual_generators": residual,
        "leading_terms_written_first": lead_ok,
        "passed": bool(ok and contains_partials and same),
        "_gb": gb_family,
        "_rescaling": (lam, rho),
    }


def original_groebner_basis(n, a):
    """Groebner basis of Jac(Zt) in the original coordinates (undo the rescaling)."""
    fam = build_potentials(n, a)
    lam, rho = solve_rescaling(fam)
    inv_lam = {j: 1 / v for j, v in lam.items()}
    inv_rho = {j: 1 / v for j, v in rho.items()}
    order = homlex_order(fam.ring, n)
    family = [rescale(p, n, inv_lam, inv_rho) for p in closed_form_family(n, a, fam.ring)]
    return fam, as_groebner_basis(family, order)


def beta_relations(n, a):
    fam, gb = original_groebner_basis(n, a)
    R = fam.ring
    beta, T = fam.beta, fam.T
    rel = beta ** (n - 1) - T * beta ** (a - 1) * (a ** a)
    nf_rel = normal_form(rel, gb)
    # beta does not depend on j modulo the ideal
    u = lambda j: R.var("u%d" % j)
    r = lambda j: R.var("r%d" % j)
    beta_j = [normal_form(r(j) * u(j) ** a - beta, gb).is_zero() for j in range(1, n + 1)]
    # initial-ideal argument: no leading monomial's u-part divides u1^(a(n-2))
    lms = gb.leading_monomials()
    top = [0] * (2 * n)
    top[n] = a * (n - 2)
    top = tuple(top)
    blockers = [m for m in lms if divides(tuple([0] * n) + m[n:], top)]
    nfs = [normal_form(beta ** i, gb) for i in range(0, n - 1)]
    # every normal form should be a multiple of the standard monomial (r1 u1^a)^i
    shapes = []
    for i, p in enumerate(nfs):
        e = [0] * (2 * n)
        e[0] = i
        e[n] = a * i
        shapes.append(len(p.terms) == 1 and tuple(e) in p.terms)
    prod_u = fam.product_u()
    product_identity = normal_form(prod_u ** (n - 1) - T * prod_u ** (a - 1) * (a ** n), gb)
    return {
        "n": n,
        "a": a,
        "relation": "beta^%d - %d*T*beta^%d" % (n - 1, a ** a, a - 1),
        "relation_normal_form": str(nf_rel),
        "relation_vanishes": nf_rel.is_zero(),
        "beta_index_independent": all(beta_j),
        "powers_standard": all(shapes),
        "divisibility_blockers": [str(R.monomial(m)) for m in blockers],
        "powers_independent": all(shapes) and not blockers,
        "product_identity_vanishes": product_identity.is_zero(),
        "passed": bool(nf_rel.is_zero() and all(beta_j) and all(shapes) and not blockers
                       and product_identity.is_zero()),
    }


def specialized_groebner(n, a):
    fam = build_potentials(n, a)
    order = grlex(fam.uring, ["u%d" % j for j in range(n, 0, -1)])
    return fam, buchberger(fam.Z_partials, order)


def invariant_monomials(n, a, degree_bound):
    """Monomials fixed by the character group: exponents congruent mod a."""
    out = []
    for exps in product(range(degree_bound + 1), repeat=n):
        if sum(exps) > degree_bound:
            continue
        if all((x - exps[0]) % a == 0 for x in exps):
            out.append(exps)
    return out


def invariant_and_local_checks(n, a, degree_bound=None):
    from .exactpoly import quotient_standard_monomials

    fam, gb = specialized_groebner(n, a)
    U = fam.uring
    u = [U.var("u%d" % j) for j in range(1, n + 1)]
    P = U.one()
    for x in u:
        P = P * x
    # (i) invariant monomials decompose as P^c * prod u_j^(a m_j)
    bound = degree_bound or 2 * a * n
    gens_ok = True
    for exps in invariant_monomials(n, a, bound):
        c = min(exps) % a
        rest = [x - c for x in exps]
        if any(x < 0 or x % a for x in rest):
            gens_ok = False
    # invariance under each generator of the character group
    chars_ok = all(_character_fixes(exps, n, a) for exps in invariant_monomials(n, a, min(bound, 2 * a)))
    # (ii) q(beta_bar) = beta_bar^(n-1) - a^a beta_bar^(a-1) with beta_bar = u_j^a
    q_res = [normal_form(u[j] ** (a * (n - 1)) - u[j] ** (a * (a - 1)) * (a ** a), gb)
             for j in range(n)]
    # (iii) witness for u_j^(a(a-1)) in the local ideal: times the cofactor u_j^(a(n-a)) - a^a
    witness = []
    for j in range(n):
        cof = u[j] ** (a * (n - a)) - a ** a
        w = u[j] ** (a * (a - 1)) * cof
        witness.append({"member": normal_form(w, gb).is_zero(),
                        "cofactor_constant": str(cof.constant_term())})
    # (iv) local algebra at the origin: J + (u_j^(a(a-1)))
    local = buchberger(fam.Z_partials + [x ** (a * (a - 1)) for x in u], gb.order)
    beta_hat = u[0] ** a
    top_in = normal_form(beta_hat ** (a - 1), local).is_zero()
    below_out = not normal_form(beta_hat ** (a - 2), local).is_zero()
    local_stair = quotient_standard_monomials(local, U.names, 0)
    # (v) zero-dimensional quotient
    stair = quotient_standard_monomials(gb, U.names, 0)
    return {
        "n": n,
        "a": a,
        "invariants_generated": gens_ok and chars_ok,
        "q_of_beta_bar_vanishes": all(p.is_zero() for p in q_res),
        "u_power_in_local_ideal": all(w["member"] and w["cofactor_constant"] != "0" for w in witness),
        "u_power_witnesses": witness,
        "beta_hat_top_power_in_ideal": top_in,
        "beta_hat_lower_power_not_in_ideal": below_out,
        "local_milnor_number": local_stair["count"],
        "quotient_zero_dimensional": stair["finite"],
        "quotient_dimension": stair["count"],
        "passed": bool(gens_ok and chars_ok and all(p.is_zero() for p in q_res)
                       and all(w["member"] for w in witness) and top_in and below_out
                       and stair["finite"]),
    }


def _character_fixes(exps, n, a):
    # generators of {zeta in (Z/a)^n : sum zeta = 0}: e_1 - e_k
    for k in range(1, n):
        if (exps[0] - exps[k]) % a:
            return False
    return True


def jacobian_certificate(n, a, specialize_r=False):
    """JSON-ready summary used by the command line."""
    if specialize_r:
        fam, gb = specialized_groebner(n, a)
        from .exactpoly import quotient_standard_monomials
        stair = quotient_standard_monomials(gb, fam.uring.names, 0)
        return {
            "n": n, "a": a, "ring": "Q[u]", "potential": fam.Z.format(),
            "order": gb.order.label,
            "basis": [p.format(gb.order) for p in gb.polys],
            "spairs": gb.spairs,
            "quotient_dimension": stair["count"],
            "checks": invariant_and_local_checks(n, a),
        }
    cert = verify_closed_form_groebner(n, a)
    gb = cert.pop("_gb")
    cert.pop("_rescaling")
    rel = beta_relations(n, a)
    return {
        "n": n, "a": a, "ring": "Q[r,u]",
        "potential": build_potentials(n, a).Zt.format(),
        "order": gb.order.label if gb else None,
        "basis": [p.format(gb.order) for p in gb.polys] if gb else [],
        "groebner": cert,
        "beta": rel,
    }
