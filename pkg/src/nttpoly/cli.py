"""Command-line front end.

Exit codes: 0 success, 1 usage, 2 parameter/friendliness error, 3 I/O or parse error.

Polynomial files hold one polynomial per line as comma-separated decimal
coefficients, constant term first. Lines starting with '#' are comments; a
comment of the form ``# q=<int> n=<int>`` supplies defaults for --q / --n.
"""
from __future__ import annotations

import argparse
import re
import secrets
import sys
from dataclasses import dataclass, field

import numpy as np

from . import bench
from .conv import Polynomial, negacyclic_convolution
from .errors import NttError, ParameterError
from .ntt_fast import (
    bitrev_permute,
    intt_gs,
    intt_gs_cyclic,
    is_power_of_two,
    ntt_ct,
    ntt_ct_cyclic,
    precompute_cyclic_tables,
    precompute_tables,
)
from .ntt_ref import NttVector, Order, Root, intt_naive, intt_psi_naive, ntt_naive, ntt_psi_naive
from .polymul import (
    TransformLedger,
    baseline_ledger,
    inverse,
    matvec_ntt,
    mul_cyclic,
    mul_negacyclic,
    sample_ntt_domain,
)
from .zq import (
    MAX_MODULUS,
    Wrap,
    find_psi,
    is_nwc_friendly,
    is_prime,
    is_pwc_friendly,
    make_context,
)

EXIT_OK, EXIT_USAGE, EXIT_PARAM, EXIT_IO = 0, 1, 2, 3

_DIRECTIVE = re.compile(r"^#\s*(.*)$")
_KEYVAL = re.compile(r"\b([qn])\s*=\s*(\d+)\b")


class UsageError(Exception):
    pass


class FileFormatError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


@dataclass
class PolyFile:
    rows: list[list[int]]
    q: int | None = None
    n: int | None = None
    comments: list[str] = field(default_factory=list)


def parse_poly_text(text: str) -> PolyFile:
    pf = PolyFile(rows=[])
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        m = _DIRECTIVE.match(line)
        if m:
            pf.comments.append(m.group(1))
            for key, val in _KEYVAL.findall(m.group(1)):
                setattr(pf, key, int(val))
            continue
        try:
            pf.rows.append([int(tok) for tok in line.split(",")])
        except ValueError:
            raise FileFormatError(f"line {lineno}: expected comma-separated integers") from None
    return pf


def format_poly_text(rows, q: int, n: int, comments=()) -> str:
    lines = [f"# q={q} n={n}"] + [f"# {c}" for c in comments]
    lines += [",".join(str(c) for c in row) for row in rows]
    return "\n".join(lines) + "\n"


def _resolve(flag: int | None, header: int | None, name: str, path: str) -> int | None:
    if flag is not None:
        if header is not None and header != flag:
            print(f"warning: --{name} {flag} overrides {name}={header} in {path}", file=sys.stderr)
        return flag
    return header


def read_polys(path: str, q: int | None, n: int | None,
               fallback: tuple[int, int] | None = None) -> tuple[int, int, list[list[int]]]:
    """Parse a polynomial file and settle q and n; rows are not validated yet.

    Flags win over the file header, which wins over ``fallback``.
    """
    try:
        with open(path) as fh:
            pf = parse_poly_text(fh.read())
    except OSError as exc:
        raise FileFormatError(f"cannot read {path}: {exc}") from None
    q = _resolve(q, pf.q, "q", path)
    n = _resolve(n, pf.n, "n", path)
    if fallback is not None:
        q = fallback[0] if q is None else q
        n = fallback[1] if n is None else n
    if q is None:
        raise UsageError(f"modulus unknown: pass --q or add '# q=<int>' to {path}")
    if n is None:
        if not pf.rows:
            raise UsageError(f"length unknown: pass --n or add '# n=<int>' to {path}")
        n = len(pf.rows[0])
    return q, n, pf.rows


def check_rows(rows: list[list[int]], q: int, n: int, path: str) -> None:
    for i, row in enumerate(rows, 1):
        if len(row) != n:
            raise FileFormatError(f"{path}: polynomial {i} has {len(row)} coefficients, expected {n}")
        if any(not 0 <= c < q for c in row):
            raise FileFormatError(f"{path}: polynomial {i} has a coefficient outside [0, {q})")


def write_output(path: str, text: str) -> None:
    if path == "-":
        sys.stdout.write(text)
        return
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise FileFormatError(f"cannot write {path}: {exc}") from None


def cmd_params_check(args) -> int:
    q, n = args.q, args.n
    if q % 2 == 0 or q < 3 or q >= MAX_MODULUS:
        print(f"error: modulus must be odd with 3 <= q < 2**31, got {q}", file=sys.stderr)
        return EXIT_PARAM
    pwc, nwc = is_pwc_friendly(q, n), is_nwc_friendly(q, n)
    cls = "NWC" if nwc else "PWC" if pwc else "none"
    print(f"q={q} n={n}")
    print(f"class: {cls}")
    if not pwc:
        return EXIT_PARAM
    ctx = make_context(q, n, Wrap.NWC if nwc else Wrap.PWC)
    print(f"omega={ctx.omega} omega_inv={ctx.omega_inv}")
    if nwc:
        print(f"psi={ctx.psi} psi_inv={ctx.psi_inv}")
    print(f"n_inv={ctx.n_inv}")
    return EXIT_OK if nwc else EXIT_PARAM


def cmd_params_find(args) -> int:
    n, count = args.n, args.count
    if not is_power_of_two(n) or n < 2:
        raise ParameterError(f"n must be a power of two >= 2, got {n}")
    if count < 0:
        raise UsageError("--count must be non-negative")
    step = 2 * n
    q = max(args.min_q, 3)
    q += (1 - q) % step  # smallest q >= min_q with q = 1 (mod 2n)
    found = 0
    while found < count:
        if q >= MAX_MODULUS:
            print(f"warning: search reached 2**31 after {found} moduli", file=sys.stderr)
            break
        if is_prime(q):
            print(f"q={q} psi={find_psi(q, n)}")
            found += 1
        q += step
    return EXIT_OK


def _transform_rows(rows, ctx, direction: str, flavor: str, impl: str) -> list[list[int]]:
    cyclic = flavor == "cyclic"
    root = Root.OMEGA if cyclic else Root.PSI
    q = ctx.q
    out = []
    if impl == "fast":
        table = precompute_cyclic_tables(ctx) if cyclic else precompute_tables(ctx)
    for row in rows:
        if direction == "fwd":
            v = Polynomial(tuple(row), q)
            if impl == "fast":
                res = (ntt_ct_cyclic if cyclic else ntt_ct)(v, table, ctx)
                out.append(bitrev_permute(list(res.values)))
            else:
                out.append(list((ntt_naive if cyclic else ntt_psi_naive)(v, ctx).values))
        else:
            if impl == "fast":
                vhat = NttVector(tuple(bitrev_permute(row)), root, Order.BIT_REVERSED, ctx)
                out.append(list((intt_gs_cyclic if cyclic else intt_gs)(vhat, table, ctx).coeffs))
            else:
                vhat = NttVector(tuple(row), root, Order.NORMAL, ctx)
                out.append(list((intt_naive if cyclic else intt_psi_naive)(vhat, ctx).coeffs))
    return out


def cmd_ntt(args) -> int:
    q, n, rows = read_polys(args.input, args.q, args.n)
    wrap = Wrap.PWC if args.flavor == "cyclic" else Wrap.NWC
    ctx = make_context(q, n, wrap)
    if args.impl == "fast" and not is_power_of_two(n):
        raise ParameterError(f"--impl fast needs a power-of-two n, got {n}")
    check_rows(rows, q, n, args.input)
    out = _transform_rows(rows, ctx, args.direction, args.flavor, args.impl)
    what = "forward NTT (normal order)" if args.direction == "fwd" else "inverse NTT"
    write_output(args.out, format_poly_text(out, q, n, [f"{args.flavor} {what}"]))
    return EXIT_OK


def cmd_mul(args) -> int:
    qa, na, a_rows = read_polys(args.a, args.q, args.n)
    qb, nb, b_rows = read_polys(args.b, args.q, args.n, fallback=(qa, na))
    if (qa, na) != (qb, nb):
        raise FileFormatError(f"operand files disagree: q={qa} n={na} vs q={qb} n={nb}")
    wrap = Wrap.PWC if args.ring == "cyclic" else Wrap.NWC
    ctx = make_context(qa, na, wrap)
    check_rows(a_rows, qa, na, args.a)
    check_rows(b_rows, qa, na, args.b)
    if len(a_rows) != len(b_rows):
        raise FileFormatError(f"operand files hold {len(a_rows)} and {len(b_rows)} polynomials")
    mul = mul_cyclic if args.ring == "cyclic" else mul_negacyclic
    out = [list(mul(Polynomial(tuple(a), qa), Polynomial(tuple(b), qa), ctx).coeffs)
           for a, b in zip(a_rows, b_rows)]
    write_output(args.out, format_poly_text(out, qa, na, [f"{args.ring} product"]))
    return EXIT_OK


def _seed(args) -> int:
    return args.seed if args.seed is not None else secrets.randbits(63)


def cmd_bench(args) -> int:
    seed = _seed(args)
    print(f"# seed={seed} q={args.q} reps={args.reps}")
    rows = bench.run_bench(args.q, args.n_min, args.n_max, args.reps, seed)
    print(bench.format_rows(rows, args.format))
    return EXIT_OK


@dataclass
class DemoResult:
    baseline: TransformLedger
    optimized: TransformLedger
    verified: bool
    seed: int


def dilithium_demo(q: int, n: int, k: int, l: int, seed: int) -> DemoResult:
    """Random k x l matrix sampled in the NTT domain times a random vector.

    Row 0 is recomputed with schoolbook negacyclic convolutions as a check.
    """
    ctx = make_context(q, n, Wrap.NWC)
    rng = np.random.default_rng(seed)
    A = [[sample_ntt_domain(ctx, rng) for _ in range(l)] for _ in range(k)]
    s = [Polynomial(tuple(rng.integers(0, q, n).tolist()), q) for _ in range(l)]
    ledger = TransformLedger()
    t = matvec_ntt(A, s, ledger)
    expected = Polynomial.zero(n, q)
    for a_hat, sj in zip(A[0], s):
        expected = expected + negacyclic_convolution(inverse(a_hat, ctx), sj)
    return DemoResult(baseline_ledger(k, l), ledger, t[0] == expected, seed)


def cmd_dilithium_demo(args) -> int:
    if args.k < 1 or args.l < 1:
        raise UsageError("--k and --l must be positive")
    seed = _seed(args)
    res = dilithium_demo(args.q, args.n, args.k, args.l, seed)
    base, opt = res.baseline, res.optimized
    print(f"seed: {seed}")
    print(f"parameters: q={args.q} n={args.n}, matrix {args.k}x{args.l} sampled in the NTT domain")
    print(f"baseline: {base.transforms} transforms, optimized: {opt.transforms} "
          f"({opt.ntt_count} NTT + {opt.intt_count} INTT)")
    print(f"baseline breakdown: {base.ntt_count} NTT + {base.intt_count} INTT, "
          f"{base.pointwise_mul_count} pointwise products")
    print(f"row 0 oracle check: {'VERIFIED' if res.verified else 'FAILED'}")
    return EXIT_OK if res.verified else EXIT_USAGE


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="nttpoly", description="NTT-based polynomial arithmetic over Z_q[x]/(x^n +- 1).",
                epilog="Polynomial files: one polynomial per line, comma-separated coefficients, "
                       "constant term first; optional header '# q=<int> n=<int>'.")
    sub = p.add_subparsers(dest="command", required=True)

    params = sub.add_parser("params", help="parameter discovery")
    psub = params.add_subparsers(dest="params_command", required=True)
    chk = psub.add_parser("check", help="classify q as PWC/NWC friendly for n and print roots")
    chk.add_argument("--q", type=int, required=True)
    chk.add_argument("--n", type=int, required=True)
    chk.set_defaults(func=cmd_params_check)
    fnd = psub.add_parser("find", help="list primes q = 1 (mod 2n) with their smallest psi")
    fnd.add_argument("--n", type=int, required=True)
    fnd.add_argument("--min-q", type=int, default=3)
    fnd.add_argument("--count", type=int, default=1)
    fnd.set_defaults(func=cmd_params_find)

    ntt = sub.add_parser("ntt", help="transform every polynomial in a file (output in normal order)")
    ntt.add_argument("--direction", choices=("fwd", "inv"), default="fwd")
    ntt.add_argument("--flavor", choices=("cyclic", "negacyclic"), default="negacyclic")
    ntt.add_argument("--impl", choices=("naive", "fast"), default="fast")
    ntt.add_argument("--q", type=int)
    ntt.add_argument("--n", type=int)
    ntt.add_argument("--in", dest="input", required=True)
    ntt.add_argument("--out", default="-")
    ntt.set_defaults(func=cmd_ntt)

    mul = sub.add_parser("mul", help="multiply polynomials line by line")
    mul.add_argument("--ring", choices=("cyclic", "negacyclic"), default="negacyclic")
    mul.add_argument("--q", type=int)
    mul.add_argument("--n", type=int)
    mul.add_argument("--a", required=True)
    mul.add_argument("--b", required=True)
    mul.add_argument("--out", default="-")
    mul.set_defaults(func=cmd_mul)

    b = sub.add_parser("bench", help="time schoolbook vs NTT multiplication")
    b.add_argument("--q", type=int, default=8380417)
    b.add_argument("--n-min", type=int, default=64)
    b.add_argument("--n-max", type=int, default=1024)
    b.add_argument("--reps", type=int, default=5)
    b.add_argument("--seed", type=int)
    b.add_argument("--format", choices=("text", "tsv"), default="text")
    b.set_defaults(func=cmd_bench)

    d = sub.add_parser("dilithium-demo", help="transform counts for a module matrix-vector product")
    d.add_argument("--q", type=int, default=8380417)
    d.add_argument("--n", type=int, default=256)
    d.add_argument("--k", type=int, default=6)
    d.add_argument("--l", type=int, default=5)
    d.add_argument("--seed", type=int)
    d.set_defaults(func=cmd_dilithium_demo)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except FileFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (NttError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAM


if __name__ == "__main__":
    sys.exit(main())
