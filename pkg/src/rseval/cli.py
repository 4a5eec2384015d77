"""Command-line entry point: ``rseval --config run.cfg --command verify``.

The config file is line oriented ``key = value`` with ``#`` comments.
Rationals are written ``a/b``; lists are comma separated.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass, replace
from fractions import Fraction
from pathlib import Path
from typing import Optional

from .algebra import prime_power
from .bounds import BRUTE_FORCE_LIMIT, bound_report, dstar_bruteforce, obs_lower_bound
from .checks import (
    cross_decoder_suite,
    decomposition_suite,
    end_to_end_suite,
    goodparity_suite,
    perp_char_suite,
    rate_half_suite,
    sigma_suite,
)
from .errors import ConstraintError, ParamConstraintViolated, ParseError, RSEvalError
from .rs_scheme import (
    EvaluationScheme,
    SchemeParams,
    build_scheme,
    evaluate_full,
    main_params,
    param_violations,
    rate_half_bound,
    rate_half_params,
)
from .rscode import RSCode, dot, encode, rs_code
from .scheme_core import EXHAUSTIVE_LIMIT
from .simulator import deploy, evaluate, evaluate_naive, evaluate_scheme, fail_nodes

COMMANDS = ("build-scheme", "simulate", "verify", "bounds", "bench")
EXIT_OK, EXIT_FAILED, EXIT_CONFIG = 0, 1, 2


@dataclass(frozen=True)
class RunConfig:
    q: int = 2
    t: int = 3
    k: int = 2
    n: Optional[int] = None
    eps: Optional[Fraction] = None
    gamma: Optional[Fraction] = None
    delta: Optional[Fraction] = None
    erasures: tuple[int, ...] = ()
    blocks: int = 1
    seed: int = 0
    samples: int = 100
    target: Optional[tuple[int, ...]] = None
    scheme_file: Optional[str] = None
    out: Optional[str] = None
    bench_t: tuple[int, ...] = tuple(range(3, 11))
    bench_rate: Fraction = Fraction(1, 4)

    @property
    def Q(self) -> int:
        return self.q ** self.t

    @property
    def length(self) -> int:
        return self.Q if self.n is None else self.n

    @property
    def params(self) -> Optional[SchemeParams]:
        if self.eps is None:
            return None
        return SchemeParams(self.eps, self.gamma, self.delta)

    def code(self) -> RSCode:
        return rs_code(self.q, self.t, self.k, self.n)


def _int(v: str) -> int:
    return int(v, 10)


def _rational(v: str) -> Fraction:
    return Fraction(v.replace(" ", ""))


def _int_list(v: str) -> tuple[int, ...]:
    return tuple(_int(x.strip()) for x in v.split(",") if x.strip())


def _int_range(v: str) -> tuple[int, ...]:
    if ".." in v:
        a, b = v.split("..", 1)
        return tuple(range(_int(a.strip()), _int(b.strip()) + 1))
    return _int_list(v)


_KEYS = {
    "q": _int, "t": _int, "k": _int, "n": _int,
    "eps": _rational, "gamma": _rational, "delta": _rational,
    "erasures": _int_list, "blocks": _int, "seed": _int, "samples": _int,
    "target": _int_list, "scheme_file": str, "out": str,
    "bench_t": _int_range, "bench_rate": _rational,
}


def parse_config(text: str) -> RunConfig:
    """Strict parse followed by validation of every cross-parameter constraint."""
    values: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ParseError("expected 'key = value'", line=lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        if key not in _KEYS:
            raise ParseError("unknown key", line=lineno, key=key)
        if key in values:
            raise ParseError("duplicate key", line=lineno, key=key)
        if not value:
            raise ParseError("empty value", line=lineno, key=key)
        try:
            values[key] = _KEYS[key](value)
        except (ValueError, ZeroDivisionError) as exc:
            raise ParseError(f"bad value {value!r} ({exc})", line=lineno, key=key) from None
    cfg = RunConfig(**values)
    validate(cfg)
    return cfg


def validate(cfg: RunConfig) -> None:
    bad = []
    try:
        prime_power(cfg.q)
    except ValueError:
        bad.append(f"q is a prime power (q = {cfg.q})")
    if cfg.t < 2:
        bad.append(f"t ≥ 2 (t = {cfg.t})")
    if bad:
        raise ConstraintError(bad)
    Q, n = cfg.Q, cfg.length
    if not 1 <= cfg.k <= n <= Q:
        bad.append(f"1 ≤ k ≤ n ≤ Q (k = {cfg.k}, n = {n}, Q = {Q})")
    if cfg.blocks < 0:
        bad.append("blocks ≥ 0")
    if any(not 0 <= j < n for j in cfg.erasures):
        bad.append(f"erasure indices in [0, {n - 1}]")
    if len(set(cfg.erasures)) != len(cfg.erasures):
        bad.append("erasure indices distinct")
    if cfg.target is not None and (len(cfg.target) != cfg.k or any(not 0 <= c < Q for c in cfg.target)):
        bad.append(f"target has k = {cfg.k} entries, each in [0, {Q - 1}]")
    given = [x is not None for x in (cfg.eps, cfg.gamma, cfg.delta)]
    if any(given) and not all(given):
        bad.append("eps, gamma and delta are given together")
    if bad:
        raise ConstraintError(bad)
    absent = (Q - n) + len(cfg.erasures)
    if cfg.params is not None:
        bad = param_violations(cfg.q, cfg.t, cfg.params, cfg.k)
        if not bad:
            try:
                main_params(cfg.q, cfg.t, cfg.eps, cfg.gamma, cfg.delta, k=cfg.k)
            except ParamConstraintViolated as exc:
                bad = exc.violations
        if absent >= cfg.gamma * Q:
            bad.append(f"|erasures| + (Q − n) < γQ ({absent} ≥ {cfg.gamma * Q})")
    else:
        if cfg.k > rate_half_bound(cfg.q, cfg.t):
            bad.append(f"k ≤ Q⌊q/2⌋(q − 1)/q² for the single-window scheme (k = {cfg.k})")
        else:
            T = rate_half_params(cfg.q, cfg.t, cfg.k)
            free = sum(1 for j in range(T.j_min, T.j_max + 1) if not 0 <= T.d - j < cfg.k)
            if absent > free:
                bad.append(f"|erasures| + (Q − n) ≤ {free} free coefficients ({absent} given)")
    if bad:
        raise ConstraintError(bad)


# ---------------------------------------------------------------------------


def _write(out: Path, name: str, data) -> Path:
    out.mkdir(parents=True, exist_ok=True)
    path = out / name
    path.write_text(json.dumps(data, indent=2) + "\n")
    return path


def _draw_target(cfg: RunConfig, rng: random.Random) -> tuple[int, ...]:
    drawn = tuple(rng.randrange(cfg.Q) for _ in range(cfg.k))
    return cfg.target if cfg.target is not None else drawn


def cmd_build_scheme(cfg: RunConfig, out: Path) -> int:
    rng = random.Random(cfg.seed)
    code = cfg.code()
    scheme = build_scheme(code, _draw_target(cfg, rng), cfg.params, cfg.erasures)
    path = _write(out, "scheme.json", scheme.to_dict())
    print(f"rounds {scheme.s}, bits {scheme.bits()} (budget {scheme.budget()}), wrote {path}")
    return EXIT_OK


def cmd_simulate(cfg: RunConfig, out: Path) -> int:
    rng = random.Random(cfg.seed)
    code = cfg.code()
    target = _draw_target(cfg, rng)
    blocks = [[rng.randrange(cfg.Q) for _ in range(cfg.k)] for _ in range(cfg.blocks)]
    cluster = fail_nodes(deploy(code, blocks), cfg.erasures)
    scheme = None
    if cfg.scheme_file:
        scheme = EvaluationScheme.from_dict(json.loads(Path(cfg.scheme_file).read_text()))
        target = scheme.p
    records, agree = [], True
    for b in range(cfg.blocks):
        if scheme is not None:
            res = evaluate_scheme(cluster, b, scheme)
        else:
            res = evaluate(cluster, b, target, cfg.params)
        naive = evaluate_naive(cluster, b, target)
        expected = dot(code.field, target, blocks[b])
        ok = res.value == naive.value == expected
        agree &= ok
        records.append({"block": b, "ok": ok, "expected": expected, **res.to_dict()})
    report = {"cluster": cluster.snapshot(), "target": list(target), "agree": agree, "results": records}
    path = _write(out, "simulate.json", report)
    bits = sum(r["bits_downloaded"] for r in records)
    print(f"{cfg.blocks} blocks, all correct: {agree}, scheme bits {bits}, wrote {path}")
    return EXIT_OK if agree else EXIT_FAILED


def cmd_verify(cfg: RunConfig, out: Path) -> int:
    rng = random.Random(cfg.seed)
    code = cfg.code()
    F = code.field
    full = RSCode.full_length(F, cfg.k)
    params = cfg.params
    suites = [sigma_suite(full)]
    if params is not None:
        if code.is_full_length:
            suites.append(decomposition_suite(code, params, rng, cfg.samples))
        suites.append(end_to_end_suite(code, params, rng, cfg.samples))
    else:
        if code.is_full_length:
            suites.append(rate_half_suite(code, rng, cfg.samples))
            if F.Q ** (2 * cfg.k) <= 1 << 16:
                suites.append(goodparity_suite(code))
            if code.n * F.t <= 64:
                suites.append(cross_decoder_suite(code, rng, min(cfg.samples, 50)))
        suites.append(end_to_end_suite(code, None, rng, cfg.samples, erasures=cfg.erasures))
    if F.Q ** cfg.k <= EXHAUSTIVE_LIMIT and code.n <= 16:
        suites.append(perp_char_suite(code, rng, 20))
    ok = all(s.ok for s in suites)
    path = _write(out, "verify.json", {"ok": ok, "seed": cfg.seed, "suites": [s.to_dict() for s in suites]})
    for s in suites:
        print(f"{'PASS' if s.ok else 'FAIL'}  {s.name}: {s.cases} cases, {s.seconds:.2f}s")
        for f in s.failures:
            print(f"      {f}")
    print(f"wrote {path}")
    return EXIT_OK if ok else EXIT_FAILED


def cmd_bounds(cfg: RunConfig, out: Path) -> int:
    code = cfg.code()
    dstar = None
    if cfg.target is not None and cfg.Q ** (code.n - code.k) <= BRUTE_FORCE_LIMIT:
        dstar = dstar_bruteforce(code, cfg.target)
    rep = bound_report(code.n, code.k, cfg.q, cfg.t, dstar)
    data = rep.to_dict()
    if dstar is not None:
        data["dstar"] = dstar
    path = _write(out, "bounds.json", data)
    print(rep.table())
    print(f"wrote {path}")
    return EXIT_OK


def bench_rows(cfg: RunConfig) -> list[dict]:
    rng = random.Random(cfg.seed)
    rows = []
    for t in cfg.bench_t:
        Q = cfg.q ** t
        k = cfg.bench_rate * Q
        if k.denominator != 1 or k < 1:
            raise ConstraintError([f"rate·Q is a positive integer for t = {t} ({k})"])
        code = rs_code(cfg.q, t, int(k))
        F = code.field
        p = tuple(rng.randrange(Q) for _ in range(code.k))
        x = tuple(rng.randrange(Q) for _ in range(code.k))
        scheme = build_scheme(code, p, cfg.params)
        ok = evaluate_full(scheme, scheme.responses(encode(code, x))) == dot(F, p, x)
        naive = code.k * F.bits_per_element
        rows.append({
            "q": cfg.q, "t": t, "n": code.n, "k": code.k,
            "scheme_bits": scheme.budget(), "downloaded_bits": scheme.bits(), "naive_bits": naive,
            "ratio": scheme.budget() / naive,
            "obs_bound_bits": obs_lower_bound(code.n, code.k, cfg.q, t) * F.bits_per_symbol,
            "correct": ok,
        })
    return rows


def cmd_bench(cfg: RunConfig, out: Path) -> int:
    rows = bench_rows(cfg)
    path = _write(out, "bench.json", {"rows": rows})
    print(f"{'t':>3} {'n':>6} {'k':>6} {'scheme':>8} {'sent':>8} {'naive':>8} {'ratio':>7}")
    for r in rows:
        print(f"{r['t']:>3} {r['n']:>6} {r['k']:>6} {r['scheme_bits']:>8} {r['downloaded_bits']:>8} "
              f"{r['naive_bits']:>8} {r['ratio']:>7.3f}")
    print(f"wrote {path}")
    return EXIT_OK if all(r["correct"] for r in rows) else EXIT_FAILED


HANDLERS = {
    "build-scheme": cmd_build_scheme,
    "simulate": cmd_simulate,
    "verify": cmd_verify,
    "bounds": cmd_bounds,
    "bench": cmd_bench,
}


def run_command(command: str, cfg: RunConfig, out: Optional[Path] = None) -> int:
    if command not in HANDLERS:
        raise ValueError(f"unknown command {command!r}")
    out = Path(out or cfg.out or "rseval-out")
    return HANDLERS[command](cfg, out)


def main(argv: Optional[list[str]] = None) -> int:
    ap = argparse.ArgumentParser(prog="rseval", description="Low-bandwidth linear evaluation on RS-coded storage")
    ap.add_argument("--config", type=Path, help="key = value config file")
    ap.add_argument("--command", required=True, choices=COMMANDS)
    ap.add_argument("--out", type=Path, help="directory for JSON reports")
    ap.add_argument("--seed", type=int, help="overrides the config seed")
    args = ap.parse_args(argv)
    try:
        text = args.config.read_text() if args.config else ""
        cfg = parse_config(text)
        if args.seed is not None:
            cfg = replace(cfg, seed=args.seed)
    except OSError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (ParseError, ConstraintError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        return run_command(args.command, cfg, args.out)
    except (ConstraintError, ParamConstraintViolated) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except RSEvalError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
