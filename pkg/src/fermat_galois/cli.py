"""Command-line front end: ``fermat-galois <subcommand> ...``.

c-vectors are little-endian: ``--q 1,0`` is tau_0 at p = 3.  Exit status is 0
on success, 1 when a verification fails and 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from . import __version__
from ._kernels import BACKEND
from .modular import SUPPORTED_PRIMES


class UsageError(Exception):
    pass


def _prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from exc
    if p not in SUPPORTED_PRIMES:
        raise argparse.ArgumentTypeError(f"p must be one of {SUPPORTED_PRIMES}")
    return p


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from exc
    if v < 1:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def _cvector(p: int, text: str):
    from .galois import CVector

    try:
        return CVector.parse(p, text)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def _emit(args, record: dict, text: str) -> None:
    if args.format == "json":
        print(json.dumps(record, sort_keys=True))
    else:
        print(text)


# ---------------------------------------------------------------------------
# subcommands


def cmd_bq(args) -> int:
    from .galois import alpha_coefficient, b_unit, norm_of_b
    from .render import render

    q = _cvector(args.p, args.q)
    b = b_unit(q, cross_check=args.cross_check)
    record = {
        "p": args.p,
        "c_vector": list(q.c),
        "B": b.grid.tolist(),
        "norm": norm_of_b(q).grid.tolist(),
        "alpha": alpha_coefficient(q) if args.p >= 5 else None,
    }
    _emit(args, record, render(b, args.style))
    return 0


def cmd_gamma(args) -> int:
    from .galois import big_gamma, extend_c, gamma_poly
    from .render import render_one_var

    q = _cvector(args.p, args.q)
    data = gamma_poly(q)
    ext = extend_c(q)
    gamma_unit = big_gamma(q)
    record = {
        "p": args.p,
        "c_vector": list(q.c),
        "extended_c": list(ext.values),
        "c": ext.total,
        "f": [np.atleast_1d(x).tolist() for x in data.f_coeffs],
        "gamma": data.gamma.grid.tolist(),
        "Gamma": gamma_unit.to_eps().grid.tolist(),
    }
    text = "\n".join([
        f"extended c: {list(ext.values)}  c = {ext.total}",
        f"gamma(e) = {render_one_var(data.gamma, 'e')}",
        f"gamma(y) = {render_one_var(data.gamma.to_y(), 'y')}",
        f"Gamma(e) = {render_one_var(gamma_unit.to_eps(), 'e')}",
    ])
    _emit(args, record, text)
    return 0


def cmd_norm(args) -> int:
    from .galois import norm_of_b, tilde_gamma
    from .group_ring import ideal_power_degree
    from .render import render

    q = _cvector(args.p, args.q)
    n = norm_of_b(q)
    tg = tilde_gamma(q)
    record = {
        "p": args.p,
        "c_vector": list(q.c),
        "norm": n.grid.tolist(),
        "tilde_gamma_ideal_degree": ideal_power_degree(tg),
    }
    text = f"N_q = {render(n, args.style)}\ntilde gamma = {render(tg, args.style)}"
    _emit(args, record, text)
    return 0


def cmd_invariants(args) -> int:
    from .invariants import invariants_report, question_probe

    record = invariants_report(args.p)
    if args.probe_question:
        record["kernel_probe"] = question_probe(args.p)
    lines = [f"p = {args.p}",
             f"dim M^Q = {record['dim_MQ']}",
             f"dim M^Q cap H1(U) = {record['dim_MQ_cap_H1U']}",
             f"codimension = {record['codim_in_MQ']}",
             f"dim L = {record['dim_L']}"]
    if args.probe_question:
        probe = record["kernel_probe"]
        lines += [f"ker(B_tau_i - 1) dims = {probe['kernel_dims']}",
                  f"kernels equal for i >= 1: {probe['kernels_equal_for_nonzero_index']}",
                  f"M^Q = ker tau_0 cap ker tau_1: {probe['MQ_equals_ker_tau0_cap_ker_tau1']}"]
    _emit(args, record, "\n".join(lines))
    return 0


def cmd_cohomology(args) -> int:
    from .cohomology import build_complex, h1_dimension

    cx = build_complex(args.p)
    record = {
        "p": args.p,
        "rho": cx.rho,
        "D0_shape": list(cx.D0.shape),
        "D1_shape": list(cx.D1.shape),
        "dim_H1": h1_dimension(args.p),
    }
    text = (f"p = {args.p}  rho = {cx.rho}  D0 {cx.D0.shape[0]}x{cx.D0.shape[1]}  "
            f"D1 {cx.D1.shape[0]}x{cx.D1.shape[1]}\ndim H^1(Q, M) = {record['dim_H1']}")
    _emit(args, record, text)
    return 0


def cmd_d2check(args) -> int:
    from .cohomology import D2Instance, d2_kernel_test, d2_kernel_test_vanishing_norm

    try:
        raw = json.loads(Path(args.instance).read_text())
        inst = D2Instance.from_dict({"p": args.p, **raw})
    except (OSError, json.JSONDecodeError, ValueError) as exc:
        raise UsageError(f"cannot read instance: {exc}") from exc
    if inst.p != args.p:
        raise UsageError(f"instance is for p={inst.p}, not {args.p}")
    if args.method == "vanishing-norm":
        try:
            verdict = d2_kernel_test_vanishing_norm(inst)
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
    else:
        verdict = d2_kernel_test(inst)
    record = {"p": args.p, **verdict.to_dict()}
    text = "in kernel of d2" if verdict.in_kernel else "not in kernel of d2"
    if verdict.in_kernel:
        text += "\ncertificate m_j:\n" + "\n".join(
            f"  m_{j} = {row.tolist()}" for j, row in enumerate(verdict.certificate))
    _emit(args, record, text)
    return 0


def cmd_zeta(args) -> int:
    from .fermat_zeta import CapExceeded, zeta_mod_p_report

    try:
        rep = zeta_mod_p_report(args.p, args.ell, args.f, args.m_max, args.cap)
    except CapExceeded as exc:
        raise UsageError(str(exc)) from exc
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    record = rep.to_dict()
    lines = [f"p = {rep.p}  q = {args.ell}^{args.f}  genus = {rep.genus}"]
    lines += [f"  N_{m} = {n}  (mod p: {r})" for m, n, r in rep.counts]
    lines.append(f"series agree: {rep.agrees}")
    _emit(args, record, "\n".join(lines))
    return 0 if rep.agrees else 1


def cmd_jacobi(args) -> int:
    from .fermat_zeta import finite_field, jacobi_index_set, jacobi_sum

    fld = finite_field(args.ell, args.f)
    if (fld.q - 1) % args.p:
        raise UsageError(f"q = {fld.q} is not 1 mod {args.p}")
    sums = {f"{i},{j}": list(jacobi_sum(args.p, fld, i, j).coords)
            for i, j in jacobi_index_set(args.p)}
    record = {"p": args.p, "ell": args.ell, "f": args.f, "q": fld.q, "jacobi_sums": sums}
    text = "\n".join(f"J({k}) = {v}" for k, v in sums.items())
    _emit(args, record, text)
    return 0


def cmd_verify(args) -> int:
    from .verification import CHECKS, run_checks

    if args.only:
        unknown = sorted(set(args.only) - set(CHECKS))
        if unknown:
            raise UsageError(f"unknown checks {unknown}; available: {sorted(CHECKS)}")
    results = run_checks(args.p, args.seed, args.only)
    ok = all(r.passed for r in results)
    record = {"p": args.p, "seed": args.seed, "backend": BACKEND, "passed": ok,
              "checks": [{k: v for k, v in r.to_dict().items() if k != "seconds"} for r in results]}
    width = max(len(r.name) for r in results) if results else 0
    lines = [f"{r.name:<{width}}  {'PASS' if r.passed else 'FAIL'}  {r.detail}" for r in results]
    lines.append(f"{'overall':<{width}}  {'PASS' if ok else 'FAIL'}")
    _emit(args, record, "\n".join(lines))
    return 0 if ok else 1


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fermat-galois",
        description="Galois action on the mod-p homology of the Fermat curve.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, needs_p=True):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        if needs_p:
            sp.add_argument("--p", type=_prime, required=True, help="odd prime in 3..13")
        sp.set_defaults(func=func)
        return sp

    def add_q(sp):
        sp.add_argument("--q", required=True, help="c-vector c0,c1,...,cr (little-endian)")
        sp.add_argument("--style", choices=("factored", "expanded"), default="factored")

    sp = add("bq", cmd_bq, "the unit B_q")
    add_q(sp)
    sp.add_argument("--cross-check", action="store_true",
                    help="also evaluate the E1 form and the plain quotient")
    add_q(add("gamma", cmd_gamma, "gamma and Gamma for q"))
    add_q(add("norm", cmd_norm, "norm N_q and tilde gamma"))
    sp = add("invariants", cmd_invariants, "invariant subspaces of M")
    sp.add_argument("--probe-question", action="store_true",
                    help="report whether the generator kernels coincide")
    add("cohomology", cmd_cohomology, "dimension of H^1(Q, M)")
    sp = add("d2check", cmd_d2check, "decide membership in the kernel of d2")
    sp.add_argument("--instance", required=True, help="JSON file with u and w arrays")
    sp.add_argument("--method", choices=("full", "vanishing-norm"), default="full")
    sp = add("zeta", cmd_zeta, "point counts and the zeta function mod p")
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--f", type=_positive, default=1)
    sp.add_argument("--m-max", type=_positive, default=1)
    sp.add_argument("--cap", type=_positive, default=None,
                    help="max affine pairs per count (default from FERMAT_GALOIS_POINT_CAP)")
    sp = add("jacobi", cmd_jacobi, "Jacobi sums in Z[x]/Phi_p")
    sp.add_argument("--ell", type=int, required=True)
    sp.add_argument("--f", type=_positive, default=1)
    sp = add("verify-paper", cmd_verify, "run every reference check for p")
    sp.add_argument("--only", nargs="+", metavar="CHECK", help="run only these checks")
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
