"""Command-line entry point and the built-in demonstration corpus.

Subcommands wire the engines together: probabilities and verdicts,
coset search and descent, block refinement, Engel and power-identity
reports, and the density-floor table.  Reports are JSON by default
(rationals rendered as "num/den" strings); --out human renders an
indented table instead.

Exit codes: 0 for consistent verdicts, 1 when a theorem check fails on
concrete data (always an implementation bug; the witness is printed),
2 for usage errors.
"""

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .algebra import (
    Algebra,
    builtin,
    field_as_algebra,
    full_ideal,
    heisenberg,
    ideal_generated,
    load_algebra,
    matrix_algebra,
    strictly_upper_triangular_lie,
    truncated,
    upper_triangular,
    zero_ideal,
)
from .bound import exhaustive_min, floor_fraction, minimize_sequences
from .errors import FqidtestError, TheoremViolation
from .freepoly import Flavor, engel, parse
from .idtest import (
    EXACT_CAP,
    block_statistics,
    coset_identity_search,
    dixon_verdict,
    engel_report,
    multilinear_descent,
    nagata_higman_check,
    zero_probability,
)

CORPUS_SEED = 20260817
CORPUS_SAMPLES = 400


# ---------------------------------------------------------------------------
# the library

BATTERY_TEXTS = ("x1*x1", "x1*x2", "x1*x2 - x2*x1", "x1*x1*x1")


def library():
    """The algebras the test suite and the corpus sweep."""
    return [
        field_as_algebra(2),
        field_as_algebra(3),
        truncated(2, 3),
        truncated(3, 3),
        truncated(2, 4),
        upper_triangular(2, 2),
        heisenberg(2),
        heisenberg(3),
        matrix_algebra(2, 2),
        strictly_upper_triangular_lie(3, 2),
        strictly_upper_triangular_lie(4, 2),
    ]


def descent_library():
    """The library members small enough for full per-ideal coset sweeps."""
    return [A for A in library() if A.name != "strictly_upper_triangular_lie(4,2)"]


def battery_for(A: Algebra):
    """The four battery polynomials, parsed in the algebra's natural flavor."""
    flavor = Flavor.LIE if A.bracket else Flavor.FREE
    return [parse(text, flavor, A.field) for text in BATTERY_TEXTS]


def two_path_pairs(limit: int = 1 << 16):
    """Library (Q, A) pairs whose full state space fits under the limit."""
    pairs = []
    for A in library():
        polys = list(battery_for(A))
        if A.bracket:
            polys.append(engel(1, A.field))
            polys.append(engel(2, A.field))
        for Q in polys:
            if A.order() ** Q.n <= limit:
                pairs.append((Q, A))
    return pairs


# ---------------------------------------------------------------------------
# serialization

def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def _opt_frac(x):
    return None if x is None else _frac(x)


def _vecs(vectors):
    return [list(v) for v in vectors]


def eval_report_dict(rep) -> dict:
    return {
        "zero_count": rep.zero_count,
        "total": rep.total,
        "probability": _frac(rep.probability),
        "degree": rep.degree,
        "threshold": _frac(rep.threshold),
        "is_identity": rep.is_identity,
        "verdict_consistent": rep.verdict_consistent,
        "mode": rep.mode,
        "samples": rep.samples,
        "seed": rep.seed,
        "functional_floor": _opt_frac(rep.functional_floor),
        "functional_consistent": rep.functional_consistent,
    }


def ideal_dict(ideal) -> dict:
    return {
        "basis": _vecs(ideal.basis),
        "rank": ideal.rank,
        "codim": ideal.codim,
    }


def witness_dict(w) -> dict:
    return {
        "ideal": ideal_dict(w.ideal),
        "representatives": _vecs(w.representatives),
        "codim": w.codim,
        "trivial": w.trivial,
    }


def certificate_dict(cert) -> dict:
    return {
        "steps": [
            {"stage": s.stage, "statement": s.statement, "verified": s.verified}
            for s in cert.steps
        ],
        "identity_on_ideal": cert.identity_on_ideal,
    }


def block_report_dict(rep) -> dict:
    return {
        "degree": rep.degree,
        "threshold": _frac(rep.threshold),
        "f_outer": _frac(rep.f_outer),
        "f_inner": _frac(rep.f_inner),
        "decay_hypothesis": rep.decay_hypothesis,
        "decay_holds": rep.decay_holds,
        "blocks": [
            {
                "key": _vecs(b.key),
                "outer_zero": b.outer_zero,
                "zero_count": b.zero_count,
                "total": b.total,
                "fraction": _frac(b.fraction),
                "identically_zero": b.identically_zero,
            }
            for b in rep.blocks
        ],
    }


def nagata_dict(rep) -> dict:
    return {
        "d": rep.d,
        "char": rep.char,
        "power_is_identity": rep.power_is_identity,
        "applicable": rep.applicable,
        "nilpotency_index": rep.nilpotency_index,
        "asserted": rep.asserted,
    }


def _jsonable(value):
    """Best-effort conversion of a witness payload to JSON-safe data."""
    if isinstance(value, Fraction):
        return _frac(value)
    if isinstance(value, dict):
        return {str(k): _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    if value is None or isinstance(value, (bool, int, str)):
        return value
    if hasattr(value, "to_text"):
        return value.to_text()
    return str(value)


def _scalar_text(v) -> str:
    if v is None:
        return "null"
    if v is True:
        return "true"
    if v is False:
        return "false"
    return str(v)


def _human_lines(value, indent: str = ""):
    if isinstance(value, dict):
        lines = []
        for k, v in value.items():
            if isinstance(v, (dict, list)):
                lines.append(f"{indent}{k}:")
                lines.extend(_human_lines(v, indent + "  "))
            else:
                lines.append(f"{indent}{k}: {_scalar_text(v)}")
        return lines
    if isinstance(value, list):
        lines = []
        for v in value:
            if isinstance(v, (dict, list)):
                lines.append(f"{indent}-")
                lines.extend(_human_lines(v, indent + "  "))
            else:
                lines.append(f"{indent}- {_scalar_text(v)}")
        return lines
    return [f"{indent}{_scalar_text(value)}"]


def render(payload, out: str) -> str:
    if out == "human":
        return "\n".join(_human_lines(payload))
    return json.dumps(payload, indent=2, sort_keys=True)


# ---------------------------------------------------------------------------
# flag plumbing

def _resolved_cap(args) -> int:
    cap = getattr(args, "cap", None)
    if cap is None:
        env = os.environ.get("FQIDTEST_CAP")
        cap = int(env) if env is not None else EXACT_CAP
    if cap < 1:
        raise ValueError("cap must be positive")
    return cap


def _resolved_workers(args) -> int:
    workers = getattr(args, "workers", 1)
    if workers < 1:
        raise ValueError("workers must be positive")
    return workers


def _algebra_arg(text: str) -> Algebra:
    if text.startswith("builtin:"):
        return builtin(text[len("builtin:"):])
    return load_algebra(text)


def _poly_arg(args, A: Algebra):
    return parse(args.poly, Flavor(args.flavor), A.field)


def _ideal_arg(A: Algebra, text: str):
    if text == "zero":
        return zero_ideal(A)
    if text == "full":
        return full_ideal(A)
    vectors = []
    for part in text.split(";"):
        vectors.append(tuple(int(x) for x in part.split(",")))
    return ideal_generated(A, vectors)


# ---------------------------------------------------------------------------
# subcommands

def cmd_check_identity(args):
    A = _algebra_arg(args.algebra)
    Q = _poly_arg(args, A)
    rep = zero_probability(
        Q, A, cap=_resolved_cap(args), workers=_resolved_workers(args),
        commutator=args.commutator,
    )
    return eval_report_dict(rep)


def cmd_probability(args):
    A = _algebra_arg(args.algebra)
    Q = _poly_arg(args, A)
    if args.samples is not None and args.seed is None:
        raise ValueError("sampled mode requires --seed")
    rep = zero_probability(
        Q, A, samples=args.samples, seed=args.seed,
        cap=_resolved_cap(args), workers=_resolved_workers(args),
        commutator=args.commutator,
    )
    return eval_report_dict(rep)


def cmd_dixon(args):
    A = _algebra_arg(args.algebra)
    Q = _poly_arg(args, A)
    rep = dixon_verdict(
        Q, A, cap=_resolved_cap(args), workers=_resolved_workers(args),
        commutator=args.commutator,
    )
    payload = eval_report_dict(rep)
    if not Q.is_zero and not Q.analyze().homogeneous:
        payload["note"] = (
            "polynomial is not homogeneous; degree is the maximum term degree"
        )
    return payload


def cmd_coset_search(args):
    A = _algebra_arg(args.algebra)
    Q = _poly_arg(args, A)
    max_codim = args.max_codim if args.max_codim is not None else A.dim
    witnesses = coset_identity_search(
        Q, A, max_codim, cap=_resolved_cap(args), commutator=args.commutator
    )
    return {
        "count": len(witnesses),
        "nontrivial": sum(not w.trivial for w in witnesses),
        "witnesses": [witness_dict(w) for w in witnesses],
    }


def cmd_descent(args):
    A = _algebra_arg(args.algebra)
    Q = _poly_arg(args, A)
    max_codim = args.max_codim if args.max_codim is not None else A.dim
    witnesses = coset_identity_search(
        Q, A, max_codim, cap=_resolved_cap(args), commutator=args.commutator
    )
    certificates = []
    for w in witnesses:
        cert = multilinear_descent(Q, A, w, commutator=args.commutator)
        certificates.append(
            {"witness": witness_dict(w), "certificate": certificate_dict(cert)}
        )
    return {"count": len(certificates), "certificates": certificates}


def cmd_blocks(args):
    A = _algebra_arg(args.algebra)
    Q = _poly_arg(args, A)
    outer = _ideal_arg(A, args.ideal_i)
    inner = _ideal_arg(A, args.ideal_j)
    rep = block_statistics(
        Q, A, outer, inner, cap=_resolved_cap(args), commutator=args.commutator
    )
    return block_report_dict(rep)


def cmd_engel(args):
    A = _algebra_arg(args.algebra)
    rep = engel_report(
        A, args.m, cap=_resolved_cap(args), workers=_resolved_workers(args)
    )
    return eval_report_dict(rep)


def cmd_nagata(args):
    A = _algebra_arg(args.algebra)
    rep = nagata_higman_check(A, args.d, cap=_resolved_cap(args))
    return nagata_dict(rep)


def cmd_bound(args):
    base = floor_fraction(args.q, args.d)
    if args.exhaustive is not None:
        res = exhaustive_min(
            args.q, args.exhaustive, args.d,
            cap=_resolved_cap(args), workers=_resolved_workers(args),
        )
        return {
            "formula": _frac(base.value),
            "minimum": res.minimum,
            "witness": res.witness.to_text(),
            "candidates": res.candidates,
            "bound": _frac(res.bound),
        }
    if args.oracle:
        oracle = minimize_sequences(args.q, args.d)
        return {
            "formula": _frac(base.value),
            "oracle": _frac(oracle.minimum),
            "witness": list(oracle.witness),
            "agree": base.value == oracle.minimum,
        }
    return _frac(base.value)


def cmd_corpus(args):
    return run_corpus(
        workers=_resolved_workers(args), cap=_resolved_cap(args)
    )


# ---------------------------------------------------------------------------
# the demonstration corpus

def run_corpus(workers: int = 1, cap: int = EXACT_CAP) -> dict:
    """Sweep the library: verdicts, descents, blocks, and a sampled run.

    Everything here is exact or fixed-seed, so the emitted report is
    byte-identical across runs and worker counts.
    """
    entries = []
    for A in descent_library():
        entry = {
            "algebra": A.name,
            "dim": A.dim,
            "order": A.order(),
            "bracket": A.bracket,
            "battery": [],
        }
        for Q in battery_for(A):
            rep = dixon_verdict(Q, A, cap=cap, workers=workers)
            item = {
                "poly": Q.to_text(),
                "flavor": Q.flavor.value,
                "report": eval_report_dict(rep),
            }
            if Q.analyze().multilinear:
                witnesses = coset_identity_search(Q, A, A.dim, cap=cap)
                verified = 0
                for w in witnesses:
                    cert = multilinear_descent(Q, A, w)
                    verified += cert.identity_on_ideal
                item["coset_witnesses"] = len(witnesses)
                item["nontrivial_witnesses"] = sum(not w.trivial for w in witnesses)
                item["descents_verified"] = verified
            entry["battery"].append(item)
        if A.bracket:
            entry["engel"] = {
                str(m): eval_report_dict(engel_report(A, m, cap=cap, workers=workers))
                for m in (1, 2)
            }
        else:
            entry["nagata"] = nagata_dict(nagata_higman_check(A, 3, cap=cap))
        entries.append(entry)

    T = truncated(2, 4)
    chain_outer = ideal_generated(T, [(0, 1, 0), (0, 0, 1)])
    blocks = block_statistics(
        parse("x1*x1", Flavor.FREE, T.field), T, chain_outer, zero_ideal(T), cap=cap
    )

    H = heisenberg(2)
    F2 = field_as_algebra(2)
    sampled = [
        {
            "algebra": H.name,
            "poly": "[x1,x2]",
            "report": eval_report_dict(
                zero_probability(
                    parse("[x1,x2]", Flavor.LIE, H.field), H,
                    samples=CORPUS_SAMPLES, seed=CORPUS_SEED,
                )
            ),
        },
        {
            "algebra": F2.name,
            "poly": "x1*x1",
            "report": eval_report_dict(
                zero_probability(
                    parse("x1*x1", Flavor.FREE, F2.field), F2,
                    samples=CORPUS_SAMPLES, seed=CORPUS_SEED,
                )
            ),
        },
    ]

    return {
        "version": __version__,
        "entries": entries,
        "blocks_example": {
            "algebra": T.name,
            "poly": "x1*x1",
            "report": block_report_dict(blocks),
        },
        "sampled": sampled,
    }


# ---------------------------------------------------------------------------
# parser and entry point

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fqidtest",
        description="Exact polynomial identity testing on finite algebras.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--cap", type=int, help="enumeration cap (default FQIDTEST_CAP or 2^24)")
    common.add_argument("--workers", type=int, default=1)
    common.add_argument("--out", choices=("json", "human"), default="json")

    alg = argparse.ArgumentParser(add_help=False)
    alg.add_argument("--algebra", required=True, help="JSON file path or builtin:name(args)")

    poly = argparse.ArgumentParser(add_help=False)
    poly.add_argument("--poly", required=True, help="polynomial text, e.g. 'x1*x2 - x2*x1'")
    poly.add_argument("--flavor", choices=("free", "assoc", "lie"), default="free")
    poly.add_argument(
        "--commutator", action="store_true",
        help="read lie brackets as ab - ba over a plain product table",
    )

    p = sub.add_parser("check-identity", parents=[common, alg, poly],
                       help="exact identity check by full enumeration")
    p.set_defaults(handler=cmd_check_identity)

    p = sub.add_parser("probability", parents=[common, alg, poly],
                       help="exact or sampled zero probability")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.set_defaults(handler=cmd_probability)

    p = sub.add_parser("dixon", parents=[common, alg, poly],
                       help="threshold verdict with the dual-route cross-check")
    p.set_defaults(handler=cmd_dixon)

    p = sub.add_parser("coset-search", parents=[common, alg, poly],
                       help="find all vanishing coset products over small-codim ideals")
    p.add_argument("--max-codim", type=int)
    p.set_defaults(handler=cmd_coset_search)

    p = sub.add_parser("descent", parents=[common, alg, poly],
                       help="multilinear descent certificates for every coset witness")
    p.add_argument("--max-codim", type=int)
    p.set_defaults(handler=cmd_descent)

    p = sub.add_parser("blocks", parents=[common, alg, poly],
                       help="per-block zero statistics over nested ideals")
    p.add_argument("--ideal-i", required=True,
                   help="'zero', 'full', or generators '0,1,0;0,0,1'")
    p.add_argument("--ideal-j", required=True,
                   help="'zero', 'full', or generators '0,1,0;0,0,1'")
    p.set_defaults(handler=cmd_blocks)

    p = sub.add_parser("engel", parents=[common, alg],
                       help="verdict for the Engel word [x, y, ..., y]")
    p.add_argument("--m", type=int, required=True)
    p.set_defaults(handler=cmd_engel)

    p = sub.add_parser("nagata", parents=[common, alg],
                       help="x^d identity check and the nilpotency it forces")
    p.add_argument("--d", type=int, required=True)
    p.set_defaults(handler=cmd_nagata)

    p = sub.add_parser("bound", parents=[common],
                       help="density floor f_q(d), oracle, or exhaustive minimum")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--oracle", action="store_true")
    p.add_argument("--exhaustive", type=int, metavar="N")
    p.set_defaults(handler=cmd_bound)

    p = sub.add_parser("corpus", parents=[common],
                       help="run the full demonstration corpus (JSON output)")
    p.set_defaults(handler=cmd_corpus)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        payload = args.handler(args)
    except TheoremViolation as exc:
        doc = {"theorem_violation": str(exc), "witness": _jsonable(exc.witness)}
        print(render(doc, args.out))
        return 1
    except (FqidtestError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    print(render(payload, args.out))
    return 0


if __name__ == "__main__":
    sys.exit(main())
