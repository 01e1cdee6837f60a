"""Command-line front end: run verification suites, print a table, optionally write JSON.

Every subcommand builds a Report of named checks. The process exits 0 iff every
check passes. JSON output is deterministic unless ``--timing`` is given.
"""
from __future__ import annotations

import json
import os
import sys
import time
from fractions import Fraction
from pathlib import Path

import click

SUPERSCRIPT = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")


def sup(k):
    return "" if k == 1 else str(k).translate(SUPERSCRIPT)


def _plain(x):
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    if isinstance(x, float):
        return repr(x)
    return str(x)


class Report:
    def __init__(self, command, parameters):
        self.command = command
        self.parameters = dict(parameters)
        self.checks = []
        self.timing = {}
        self._t0 = time.perf_counter()

    def check(self, name, ok, witness=None, anchor=""):
        self.checks.append({"name": name, "status": "pass" if ok else "fail",
                            "witness": _plain(witness), "anchor": anchor})
        return ok

    def stage(self, name):
        now = time.perf_counter()
        self.timing[name] = round(now - self._t0, 3)
        self._t0 = now

    @property
    def passed(self):
        return bool(self.checks) and all(c["status"] == "pass" for c in self.checks)

    def as_dict(self, timing=False):
        d = {"command": self.command, "parameters": _plain(self.parameters),
             "checks": self.checks, "passed": self.passed}
        if timing:
            d["timing"] = self.timing
        return d

    def to_json(self, timing=False):
        return json.dumps(self.as_dict(timing), indent=2, sort_keys=True, ensure_ascii=False) + "\n"

    def table(self):
        width = max([len(c["name"]) for c in self.checks] + [10])
        lines = [("%s  %s" % (self.command, " ".join("--%s %s" % (k, v)
                                                    for k, v in self.parameters.items()))).rstrip()]
        for c in self.checks:
            lines.append("  %-4s  %-*s  [%s]" % (c["status"].upper(), width, c["name"], c["anchor"]))
        lines.append("overall: %s" % ("PASS" if self.passed else "FAIL"))
        return "\n".join(lines)


def _scratch():
    d = os.environ.get("MIRRORALG_SCRATCH")
    if d:
        Path(d).mkdir(parents=True, exist_ok=True)
    return d


def _emit(ctx, report):
    opts = ctx.find_root().obj or {}
    click.echo(report.table())
    if opts.get("timing"):
        for k, v in report.timing.items():
            click.echo("  time %-24s %.3fs" % (k, v))
    path = opts.get("json")
    if path:
        Path(path).write_text(report.to_json(opts.get("timing", False)), encoding="utf-8")
    ctx.exit(0 if report.passed else 1)


def _run(ctx, report, fn):
    try:
        fn(report)
    except Exception as exc:  # noqa: BLE001 - surfaced as a structured failure
        report.check("internal error", False, {"type": type(exc).__name__, "message": str(exc)},
                     "runtime")
    _emit(ctx, report)


def _parse_form(text):
    kind, _, body = text.partition(":")
    vals = [Fraction(x) for x in body.split(",") if x.strip()]
    if kind != "diag" or not vals:
        raise click.BadParameter("form must look like diag:1,1,...", param_hint="--form")
    return [[vals[i] if i == j else Fraction(0) for j in range(len(vals))]
            for i in range(len(vals))]


@click.group()
@click.option("--json", "json_path", type=click.Path(dir_okay=False, writable=True),
              help="Write the JSON certificate to this path.")
@click.option("--timing", is_flag=True, help="Print stage timings (and store them in the JSON).")
@click.pass_context
def main(ctx, json_path, timing):
    """Exact verification suites for Fermat-type mirror computations."""
    ctx.obj = {"json": json_path, "timing": timing, "scratch": _scratch()}


def na_options(f):
    f = click.option("--a", "a", type=click.IntRange(1), required=True)(f)
    return click.option("--n", "n", type=click.IntRange(3), required=True)(f)


def _validate_na(n, a):
    if not 1 <= a <= n - 1:
        raise click.UsageError("need 1 <= a <= n-1")


# ---------------------------------------------------------------- grading


@main.group()
def grading():
    """Grading data and degree-admissible cochain supports."""


@grading.command("enumerate")
@na_options
@click.option("--t", "t", type=int, required=True, help="Target degree.")
@click.option("--kind", type=click.Choice(["polyvector", "map"]), default="polyvector")
@click.pass_context
def grading_enumerate(ctx, n, a, t, kind):
    _validate_na(n, a)
    from .grading import GradingDatum, enumerate_cochain_supports

    rep = Report("grading enumerate", {"n": n, "a": a, "t": t, "kind": kind})

    def body(rep):
        G = GradingDatum(n, a)
        sups = enumerate_cochain_supports(G, t, kind=kind)
        rep.check("%d supports of degree %d in %s" % (len(sups), t, G), True,
                  [s.describe() for s in sups], "degree-equations")
        rep.check("every support has length s = |b| or 1", all(
            (s.s == sum(s.b)) if kind == "polyvector" else s.s == 1 for s in sups),
            None, "degree-equations")

    _run(ctx, rep, body)


# ---------------------------------------------------------------- groebner


@main.command()
@click.option("--input", "input_path", required=True,
              help="File with one polynomial per line (or separated by commas/semicolons).")
@click.option("--order", "order_text", required=True, help="e.g. lex:u1>u2>u3 or grlex:x>y")
@click.pass_context
def groebner(ctx, input_path, order_text):
    """Reduced Groebner basis of the polynomials in a file."""
    from .exactpoly import PolyRing, buchberger, is_groebner_basis, parse_order, parse_polynomial

    p = Path(input_path)
    if not p.is_file():
        raise click.UsageError("input %r is not a readable file" % input_path)
    chunks = [c.strip() for line in p.read_text(encoding="utf-8").splitlines()
              for c in line.replace(";", ",").split(",")]
    chunks = [c for c in chunks if c and not c.startswith("#")]
    if not chunks:
        raise click.UsageError("input %r contains no polynomials" % input_path)
    try:
        order_vars = [x.strip() for blk in order_text.split("|")
                      for x in blk.partition(":")[2].split(">") if x.strip()]
        ring = PolyRing(order_vars)
        polys = [parse_polynomial(c, ring) for c in chunks]
        order = parse_order(ring, order_text)
    except (ValueError, KeyError) as exc:
        raise click.UsageError(str(exc))
    rep = Report("groebner", {"input": p.name, "order": order_text})

    def body(rep):
        gb = buchberger(polys, order)
        rep.check("reduced basis (%d elements)" % len(gb.polys), True,
                  [q.format(order) for q in gb.polys], "buchberger")
        ok, cert = is_groebner_basis(gb.polys, order)
        rep.check("Buchberger criterion: all S-pairs reduce to 0", ok,
                  {"spairs": len(cert)}, "buchberger-criterion")

    _run(ctx, rep, body)


# ---------------------------------------------------------------- jacobian


def beta_name(n, a):
    return "β%s = %sTβ%s" % (sup(n - 1), a ** a if a ** a != 1 else "", sup(a - 1))


def _jacobian_checks(rep, n, a, specialize_r=False):
    from .jacobian import jacobian_certificate

    cert = jacobian_certificate(n, a, specialize_r)
    if specialize_r:
        chk = cert["checks"]
        rep.check("Jacobian ideal basis at r = 1 (%d elements)" % len(cert["basis"]), True,
                  {"quotient_dimension": cert["quotient_dimension"]}, "jacobian-ring")
        rep.check("q(β̄) ≡ 0", chk["q_of_beta_bar_vanishes"], None, "invariant-ring")
        rep.check("u_j^{a(a-1)} in the local Jacobian ideal", chk["u_power_in_local_ideal"],
                  chk["u_power_witnesses"], "local-milnor-algebra")
        rep.check("β̂^{a-1} in, β̂^{a-2} not in the local ideal",
                  chk["beta_hat_top_power_in_ideal"] and chk["beta_hat_lower_power_not_in_ideal"],
                  {"milnor_number": chk["local_milnor_number"]}, "local-milnor-algebra")
        rep.check("invariant ring generated by P and u_j^a", chk["invariants_generated"], None,
                  "invariant-ring")
        return cert
    g, b = cert["groebner"], cert["beta"]
    rep.check("Groebner family passes Buchberger's criterion", g["buchberger_criterion"],
              {"spairs": g["spairs_checked"]}, "groebner-family")
    rep.check("family = reduced basis of the rescaled Jacobian ideal",
              g["partials_in_family_ideal"] and g["reduced_basis_of_partials_equals_family"],
              g["rescaling"], "groebner-family")
    rep.check(beta_name(n, a), b["relation_vanishes"], b["relation_normal_form"],
              "beta-relation")
    rep.check("1, β, ..., β%s independent" % sup(n - 2), b["powers_independent"],
              b["divisibility_blockers"], "beta-relation")
    return cert


@main.command()
@na_options
@click.option("--specialize-r", is_flag=True, help="Work at r = 1 in Q[u].")
@click.pass_context
def jacobian(ctx, n, a, specialize_r):
    """Groebner basis of Jac(Z~) and the relation satisfied by β."""
    _validate_na(n, a)
    rep = Report("jacobian", {"n": n, "a": a, "specialize-r": specialize_r})
    _run(ctx, rep, lambda r: _jacobian_checks(r, n, a, specialize_r))


# ---------------------------------------------------------------- superpotential


def _superpotential_checks(rep, n, a, hessians=True):
    from .superpotential import critical_point_suite

    s = critical_point_suite(n, a, hessians)
    rep.check("%d small critical points" % s["small"], s["small"] == s["expected_small"],
              {"expected": s["expected_small"]}, "critical-points")
    rep.check("critical values with fiber sizes", True, s["values"], "critical-values")
    rep.check("Γ* acts freely and transitively on small points", s["gamma"]["passed"],
              {k: v for k, v in s["gamma"].items() if k != "passed"}, "group-action")
    if hessians:
        rep.check("all small Hessians nondegenerate", s["all_small_hessians_nondegenerate"],
                  None, "hessians")
    return s


@main.command()
@na_options
@click.option("--hessians/--no-hessians", default=True)
@click.pass_context
def superpotential(ctx, n, a, hessians):
    """Critical points and values of W."""
    _validate_na(n, a)
    rep = Report("superpotential", {"n": n, "a": a, "hessians": hessians})
    _run(ctx, rep, lambda r: _superpotential_checks(r, n, a, hessians))


# ---------------------------------------------------------------- quantum


@main.group()
def quantum():
    """Small quantum cohomology models."""


def _hyperplane_checks(rep, n, a):
    from .quantum import hyperplane_suite

    s = hyperplane_suite(n, a)
    rep.check("Frobenius algebra Q[P]/q (dim %d)" % s["dim"], s["frobenius"], None, "frobenius")
    rep.check("c1 spectrum = critical values (big mult %s)" % s["big_multiplicity"],
              s["matches_critical_values"] and all(s["decomposition_checks"].values()),
              {"small_multiplicities": s["small_multiplicities"],
               "rational": s["rational_eigenvalues"]}, "spectrum-matching")
    return s


@quantum.command("hyperplane")
@na_options
@click.pass_context
def quantum_hyperplane(ctx, n, a):
    _validate_na(n, a)
    rep = Report("quantum hyperplane", {"n": n, "a": a})
    _run(ctx, rep, lambda r: _hyperplane_checks(r, n, a))


@quantum.command("cubic")
@click.pass_context
def quantum_cubic(ctx):
    from .quantum import cubic_surface_suite

    rep = Report("quantum cubic", {})

    def body(rep):
        s = cubic_surface_suite()
        rep.check("associative Frobenius algebra", s["frobenius"], s["frobenius_failures"],
                  "cubic-surface")
        eig = s["eigenvalues"]
        rep.check("eigenvalues −6 (mult 8), 21 (mult 1)", eig == {"-6": 8, "21": 1}, eig,
                  "cubic-surface")
        rep.check("(P+6)³ = 27(P+6)²", s["(P+6)^3=27(P+6)^2"], None, "cubic-surface")
        rep.check("big eigenspace spanned by listed vectors",
                  all(s["big_eigenspace_contains"].values())
                  and s["listed_vectors_span_big_eigenspace"], s["big_eigenspace_contains"],
                  "cubic-surface")
        lines = s["lines"]
        rep.check("lines = 27", s["lines_from_table"] == "27" and lines["passed"],
                  {k: v for k, v in lines.items() if k != "passed"}, "cubic-surface")

    _run(ctx, rep, body)


# ---------------------------------------------------------------- clifford


@main.group()
def clifford():
    """Clifford algebras: Hochschild cohomology and isomorphism witnesses."""


@clifford.command("hh")
@click.option("--n", "n", type=click.IntRange(1), required=True)
@click.option("--form", "form", default=None, help="diag:q1,...,qn (default identity)")
@click.option("--s-max", "s_max", type=click.IntRange(0), default=4)
@click.pass_context
def clifford_hh(ctx, n, form, s_max):
    from .clifford import clifford_build, hh_bar_bruteforce

    B = _parse_form(form) if form else [[Fraction(int(i == j)) for j in range(n)]
                                         for i in range(n)]
    if len(B) != n:
        raise click.BadParameter("form has %d entries, expected %d" % (len(B), n),
                                 param_hint="--form")
    rep = Report("clifford hh", {"n": n, "form": form or "identity", "s-max": s_max})

    def body(rep):
        A = clifford_build(B)
        res = hh_bar_bruteforce(A, s_max)
        tot = {s: res.total(s) for s in range(s_max + 1)}
        nondeg = all(B[i][i] != 0 for i in range(n))
        rep.check("HH⁰ = %d (graded center)" % tot[0], tot[0] >= 1, res.as_dict()["HH"],
                  "clifford-hh")
        higher = [tot[s] for s in range(1, s_max + 1)]
        if nondeg:
            rep.check("HH^s = 0 for 1 ≤ s ≤ %d" % s_max, not any(higher), higher, "clifford-hh")
        else:
            rep.check("degenerate form: HH^s ≠ 0 for some s ≥ 1", any(higher), higher,
                      "clifford-hh-contrast")
        rep.check("ungraded center dimension %d" % A.ungraded_center_dim(), True, None,
                  "clifford-hh")

    _run(ctx, rep, body)


@clifford.command("iso")
@click.pass_context
def clifford_iso(ctx):
    """Cl_2 = End(C^{1|1}) and the Koszul resolution computation for Cl_1."""
    from .clifford import cl2_matrix_witness, hh_cl1_resolution

    rep = Report("clifford iso", {})

    def body(rep):
        w = cl2_matrix_witness()
        rep.check("Cl_2 ≅ End(C^{1|1}) over Q(i)", w["passed"], w, "clifford-matrix")
        r = hh_cl1_resolution()
        rep.check("Cl_1 bimodule section (scale %s)" % r["section_scale"],
                  r["bimodule_map"] and r["section_after_scaling"],
                  {k: r[k] for k in ("map", "multiplication_of_image", "section_scale")},
                  "clifford-resolution")
        rep.check("Cl_1: HH vanishes in positive length", r["conclusion_HH_positive_length_zero"],
                  r["bruteforce"]["HH_by_length"], "clifford-resolution")

    _run(ctx, rep, body)


# ---------------------------------------------------------------- ainf


@main.group()
def ainf():
    """A-infinity checks on the transferred model."""


def _model_options(f):
    f = click.option("--arity", type=click.IntRange(2), default=4)(f)
    f = click.option("--rdeg", type=click.IntRange(0), default=1)(f)
    return na_options(f)


def _model_checks(rep, n, a, rdeg, arity, stability=False, model=None):
    from .suites import minimal_model_suite

    s, model = minimal_model_suite(n, a, rdeg, arity, stability, model)
    rep.stage("minimal model")
    rep.check("δ_K² = Z̃·id", s["delta_squared"], None, "koszul-factorization")
    rep.check("A∞ relations through arity %d, r-degree %d" % (arity, rdeg), s["ainf_relations"],
              {"entries": s["entries"], "violations": s["ainf_violations"]}, "minimal-model")
    rep.check("μ⁰ = μ¹ = 0", s["mu0_zero"] and s["mu1_zero"], None, "minimal-model")
    rep.check("order-0 cohomology is the exterior algebra", s["order0_exterior"], None,
              "minimal-model")
    rep.check("first-order class Σ c_j r_j u_j%s" % sup(a),
              all(Fraction(c) != 0 for c in s["first_order_class"]), s["first_order_class"],
              "first-order-class")
    rep.check("entries respect the grading", s["grading"], None, "grading")
    if stability:
        st = s["stability"]
        rep.check("stable under bound increment", st["stable"],
                  {k: st[k] for k in ("incremented", "tuples_rechecked", "changed_entries")},
                  "stability")
    return model


@ainf.command("verify")
@_model_options
@click.pass_context
def ainf_verify_cmd(ctx, n, a, rdeg, arity):
    _validate_na(n, a)
    rep = Report("ainf verify", {"n": n, "a": a, "rdeg": rdeg, "arity": arity})
    _run(ctx, rep, lambda r: _model_checks(r, n, a, rdeg, arity))


def _disk_checks(rep, n, a, model=None):
    from .matfact import clifford_hessian_check, type_check_and_disk_potential

    report, dp = type_check_and_disk_potential(n, a, model=model)
    rep.stage("disk potential")
    d = report["disk_potential"]
    rep.check("pre-disk potential is a multiple of the unit", d["multiples_of_unit"],
              d["witnesses"], "disk-potential")
    rep.check("MC residual and derivative identity", d["mc_residual_zero"]
              and d["derivative_identity"], None, "disk-potential")
    rep.check("strict unit and homotopy-unit extension", d["strictly_unital"]
              and d["homotopy_unit_extension"], None, "homotopy-units")
    rep.check("CC^{≤0} = C·e", bool(d["cc_nonpositive"]), None, "disk-potential")
    rep.check("P' = Z̃ monomial-wise up to sign rescaling",
              report["support_matches"] and bool(report["sign_rescalings"]),
              {"potential": d["potential"], "signs": report["sign_rescalings"]}, "disk-potential")
    rep.check("P'(r=1) + w = W", report["matches_W_after_r1"], None, "disk-potential")
    if report["sign_rescalings"]:
        h = clifford_hessian_check(n, a, dp.potential, dp.ring, report["sign_rescalings"][0])
        rep.stage("hessians")
        rep.check("%d small critical points: Cl(-Hess/2) ≅ Cl_%d" % (h["points"], n),
                  h["all_nondegenerate"] and h["all_clifford_match"], h["details"][:1],
                  "clifford-hessian")
    return report


@ainf.command("disk-potential")
@na_options
@click.option("--wbc", is_flag=True, help="Also run the weak bounding cochain suite.")
@click.pass_context
def ainf_disk(ctx, n, a, wbc):
    _validate_na(n, a)
    rep = Report("ainf disk-potential", {"n": n, "a": a, "wbc": wbc})

    def body(rep):
        _disk_checks(rep, n, a)
        if wbc:
            _wbc_checks(rep, n, a)

    _run(ctx, rep, body)


def _wbc_checks(rep, n, a):
    from .suites import wbc_suite

    s = wbc_suite(n, a)
    rep.stage("weak bounding cochains")
    rep.check("MC residual of ι(v) vanishes", s["mc_residual_zero"], s["potential"], "wbc")
    rep.check("symmetrized μ² = Hess(P')", s["hessian_identity"], None, "wbc")
    rep.check("μ¹_α = 0 except f ↦ e⁺ − e at %d points" % s["points_checked"],
              s["points_passed"] == s["points_checked"], s["cohomology_ranks"], "wbc")
    rep.check("[d, H] = Id between equal-value points", s["homotopy"]["passed"], s["homotopy"],
              "contracting-homotopy")


@ainf.command("gauge")
@na_options
@click.option("--seed", type=int, default=1)
@click.option("--flip", type=click.IntRange(1), default=1)
@click.pass_context
def ainf_gauge(ctx, n, a, seed, flip):
    """Reconstruct a random first-order gauge, and detect a flipped class."""
    _validate_na(n, a)
    if flip > n:
        raise click.BadParameter("flip must be at most n", param_hint="--flip")
    from .suites import gauge_suite

    rep = Report("ainf gauge", {"n": n, "a": a, "seed": seed, "flip": flip})

    def body(rep):
        s = gauge_suite(n, a, seed, flip)
        rt, fl = s["round_trip"], s["flipped"]
        rep.check("gauge-perturbed copy reconstructed to r-degree 1",
                  rt["ok"] and s["perturbed_entries"] > 0,
                  {k: rt[k] for k in ("phi_entries", "residual_entries")}, "gauge")
        rep.check("no obstruction at r-orders ≥ 2", bool(rt["thh2_higher_orders_vanish"]), None,
                  "gauge")
        rep.check("flipped class obstructed at r%d with read-off %s" % (
            flip, ",".join(s["predicted_readoff"])), s["passed"],
            {"obstruction": fl["obstruction"], "readoff": fl["obstruction_readoff"]}, "gauge")

    _run(ctx, rep, body)


@ainf.command("group")
@na_options
@click.pass_context
def ainf_group(ctx, n, a):
    """Fourier isomorphism and twisted units of the semidirect product."""
    _validate_na(n, a)
    from .suites import group_suite

    rep = Report("ainf group", {"n": n, "a": a})

    def body(rep):
        s = group_suite(n, a)
        for name, f in s["fourier"].items():
            rep.check("Fourier isomorphism for %s" % name, f["passed"], f, "fourier")
        rep.check("e⊗χ composes to the strict unit (%d characters)" % s["characters"],
                  s["unit_twists_passed"] == s["characters"], s["sample_composite"],
                  "twisted-units")

    _run(ctx, rep, body)


# ---------------------------------------------------------------- minimal-model


@main.command("minimal-model")
@_model_options
@click.option("--stability-check", is_flag=True)
@click.pass_context
def minimal_model_cmd(ctx, n, a, rdeg, arity, stability_check):
    """Transferred minimal model of End(K) at the given bounds."""
    _validate_na(n, a)
    rep = Report("minimal-model", {"n": n, "a": a, "rdeg": rdeg, "arity": arity,
                                   "stability-check": stability_check})
    _run(ctx, rep, lambda r: _model_checks(r, n, a, rdeg, arity, stability_check))


# ---------------------------------------------------------------- report


@main.group()
def report():
    """Chained reports."""


@report.command("all")
@na_options
@click.pass_context
def report_all(ctx, n, a):
    _validate_na(n, a)
    rep = Report("report all", {"n": n, "a": a})

    def body(rep):
        _jacobian_checks(rep, n, a)
        rep.stage("jacobian")
        _superpotential_checks(rep, n, a)
        rep.stage("superpotential")
        _hyperplane_checks(rep, n, a)
        rep.stage("quantum")
        model = _model_checks(rep, n, a, 1, 4)
        _disk_checks(rep, n, a, model)

    _run(ctx, rep, body)


if __name__ == "__main__":
    sys.exit(main())
