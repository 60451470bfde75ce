"""Command-line front end; JSON on stdout, diagnostics on stderr.

Exit codes: 0 success, 1 unparseable input, 2 domain error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any, Sequence

from . import drinfeld, linking, loop_modules
from .gamma import GammaElement, gamma_group, lambda_gamma, project
from .rootsys import LieType, LieTypeError, RootSystem, build, is_dominant
from .tensor_oracle import (NotDominantError, adjoint_tensor_decomposition,
                            adjoint_tensor_multiplicity, weight_multiplicities, weyl_dim)


class ParseError(ValueError):
    pass


class DomainError(ValueError):
    pass


def _json_arg(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON {text!r}: {exc.msg}") from None


def _root_system(text: str) -> RootSystem:
    try:
        return build(LieType.parse(text))
    except LieTypeError as exc:
        raise ParseError(str(exc)) from None


def _weight(rs: RootSystem, text: str, dominant: bool = True) -> tuple[int, ...]:
    data = _json_arg(text)
    if not (isinstance(data, list) and all(isinstance(x, int) for x in data)):
        raise ParseError(f"a weight is a JSON array of integers, got {text!r}")
    if len(data) != rs.rank:
        raise ParseError(f"{rs} weights have {rs.rank} coordinates, got {len(data)}")
    if dominant and not is_dominant(data):
        raise DomainError(f"weight {data} is not dominant")
    return tuple(data)


def _tuple(rs: RootSystem, text: str) -> drinfeld.PolyTuple:
    data = _json_arg(text)
    if isinstance(data, list):
        data = {"coeffs": data}
    if not isinstance(data, dict) or not ({"factors", "coeffs"} & set(data)):
        raise ParseError("expected {\"factors\": [...]} or {\"coeffs\": [...]}")
    if "type" in data and data["type"] != str(rs.lie_type):
        raise DomainError(f"tuple is for {data['type']}, command is for {rs}")
    try:
        return drinfeld.PolyTuple.from_json({**data, "type": str(rs.lie_type)})
    except (KeyError, TypeError) as exc:
        raise ParseError(f"malformed polynomial tuple: {exc}") from None


def _point(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"spectral point must be a rational number, got {text!r}") from None


# --- commands ------------------------------------------------------------------

def cmd_gamma(a) -> dict:
    return {"group": gamma_group(_root_system(a.type)).name()}


def cmd_project(a) -> dict:
    rs = _root_system(a.type)
    return project(rs, _weight(rs, a.weight, dominant=False)).to_json()


def cmd_lambda_gamma(a) -> dict:
    rs = _root_system(a.type)
    g = gamma_group(rs)
    data = _json_arg(a.residues)
    if not (isinstance(data, list) and all(isinstance(x, int) for x in data)):
        raise ParseError("residues must be a JSON array of integers")
    if len(data) != len(g.invariant_factors):
        raise ParseError(f"{rs} has {len(g.invariant_factors)} residues, got {len(data)}")
    return {"weight": list(lambda_gamma(rs, GammaElement(tuple(data), g.invariant_factors)))}


def cmd_factor(a) -> dict:
    rs = _root_system(a.type)
    return _tuple(rs, a.tuple).to_json()


def cmd_char(a) -> dict:
    rs = _root_system(a.type)
    return drinfeld.spectral_character(_tuple(rs, a.tuple)).to_json()


def cmd_same_block(a) -> dict:
    rs = _root_system(a.type)
    return {"same_block": drinfeld.same_block(_tuple(rs, a.first), _tuple(rs, a.second))}


def cmd_block_label(a) -> dict:
    rs = _root_system(a.type)
    return {"block": drinfeld.block_label_json(drinfeld.block_label(_tuple(rs, a.tuple)))}


def cmd_dual(a) -> dict:
    rs = _root_system(a.type)
    return drinfeld.dual(_tuple(rs, a.tuple)).to_json()


def _emit_chain(rs: RootSystem, chain: linking.LinkChain, a) -> dict:
    if a.simplify:
        chain = linking.simplify_chain(rs, chain)
    if a.certify:
        report = linking.verify_chain(rs, chain)
        if not report:
            raise DomainError(f"chain failed re-verification at {report.failing_pair}: {report.reason}")
    return {"chain": [list(w) for w in chain.weights], "certified": True}


def cmd_chain(a) -> dict:
    rs = _root_system(a.type)
    return _emit_chain(rs, linking.chain_to_representative(rs, _weight(rs, a.weight)), a)


def cmd_chain_between(a) -> dict:
    rs = _root_system(a.type)
    chain = linking.chain_between(rs, _weight(rs, a.source), _weight(rs, a.target))
    return _emit_chain(rs, chain, a)


def cmd_verify_chain(a) -> dict:
    rs = _root_system(a.type)
    data = _json_arg(a.chain)
    try:
        chain = linking.LinkChain.from_json(data, rs.lie_type)
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed chain: {exc}") from None
    if any(len(w) != rs.rank for w in chain.weights):
        raise ParseError(f"{rs} weights have {rs.rank} coordinates")
    report = linking.verify_chain(rs, chain)
    out: dict[str, Any] = {"valid": report.ok}
    if not report.ok:
        out["failing_pair"] = [list(w) for w in report.failing_pair] if report.failing_pair else None
        out["reason"] = report.reason
    return out


def cmd_tensor_mult(a) -> dict:
    rs = _root_system(a.type)
    mu = _weight(rs, a.mu)
    if a.nu is None:
        dec = adjoint_tensor_decomposition(rs, mu)
        return {"decomposition": [{"weight": list(w), "mult": m} for w, m in sorted(dec.items())]}
    return {"multiplicity": adjoint_tensor_multiplicity(rs, mu, _weight(rs, a.nu))}


def cmd_dim(a) -> dict:
    rs = _root_system(a.type)
    return {"dim": weyl_dim(rs, _weight(rs, a.weight))}


def cmd_weights(a) -> dict:
    rs = _root_system(a.type)
    ws = weight_multiplicities(rs, _weight(rs, a.weight))
    return {"dim": ws.dimension(),
            "dominant": [{"weight": list(w), "mult": m} for w, m in sorted(ws.dominant.items())]}


def cmd_module_lab(a) -> dict:
    rs = _root_system(a.type)
    if a.lab == "ext":
        lam, mu, pt = _weight(rs, a.lam), _weight(rs, a.mu), _point(a.point)
        m = loop_modules.extension_module(rs, lam, mu, pt)
        out = {
            "dim": m.dim,
            "lie_action": bool(loop_modules.check_lie_action(m)),
            "exact_sequence": bool(loop_modules.exact_sequence(m)),
            "nonsplit": loop_modules.is_nonsplit(m),
            "jet_annihilator": loop_modules.acts_as_zero(m, f"(t - ({pt}))**2"),
            "character": loop_modules.spectral_character_of(m).to_json()["support"],
        }
        if a.bundle:
            out["module"] = m.to_json()
        return out
    if a.lab == "tensor":
        m1 = loop_modules.evaluation_module(
            loop_modules.build_irrep(rs, _weight(rs, a.lam)), _point(a.a))
        m2 = loop_modules.evaluation_module(
            loop_modules.build_irrep(rs, _weight(rs, a.mu)), _point(a.b))
        m = loop_modules.tensor_product(m1, m2)
        rep = loop_modules.irreducibility_report(m, seed=a.seed)
        out = {"dim": m.dim, "irreducible": rep.irreducible, "verdict": rep.verdict(),
               "character": loop_modules.spectral_character_of(m).to_json()["support"]}
        if rep.witness is not None:
            out["witness_dim"] = rep.witness.shape[1]
        return out
    m = loop_modules.evaluation_module(loop_modules.build_irrep(rs, _weight(rs, a.lam)),
                                       _point(a.point))
    return m.to_json()


# --- parser ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    # defaults are filled in after parsing so flags work before or after the subcommand
    common.add_argument("--pretty", action="store_true", default=argparse.SUPPRESS,
                        help="human-readable output")
    common.add_argument("--certify", action="store_true", default=argparse.SUPPRESS,
                        help="re-verify chains before output")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS,
                        help="seed for randomized module tests")

    parser = argparse.ArgumentParser(prog="block-atlas", parents=[common],
                                     description="Blocks of finite-dimensional loop algebra modules.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, func, *args: str, help: str = "") -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help)
        p.add_argument("type", help="Lie type, e.g. A2 or E7")
        for arg in args:
            if arg.endswith("?"):
                p.add_argument(arg[:-1], nargs="?")
            else:
                p.add_argument(arg)
        p.set_defaults(func=func)
        return p

    add("gamma", cmd_gamma, help="the group P/Q")
    add("project", cmd_project, "weight", help="class of a weight in P/Q")
    add("lambda-gamma", cmd_lambda_gamma, "residues", help="minimal shaded representative")
    add("factor", cmd_factor, "tuple", help="factor a polynomial tuple")
    add("char", cmd_char, "tuple", help="spectral character")
    add("same-block", cmd_same_block, "first", "second", help="block membership")
    add("block-label", cmd_block_label, "tuple", help="canonical block label")
    add("dual", cmd_dual, "tuple", help="tuple of the dual module")
    for name, func, args in (("chain", cmd_chain, ("weight",)),
                             ("chain-between", cmd_chain_between, ("source", "target"))):
        p = add(name, func, *args, help="certified linking chain")
        p.add_argument("--simplify", action="store_true", help="peephole-shorten the chain")
    add("verify-chain", cmd_verify_chain, "chain", help="re-certify a chain")
    add("tensor-mult", cmd_tensor_mult, "mu", "nu?", help="multiplicities in g (x) V(mu)")
    add("dim", cmd_dim, "weight", help="Weyl dimension")
    add("weights", cmd_weights, "weight", help="dominant weight multiplicities")

    lab = add("module-lab", cmd_module_lab, help="explicit loop modules")
    labs = lab.add_subparsers(dest="lab", required=True)
    ext = labs.add_parser("ext", parents=[common], help="extension module V(lam, mu, a)")
    ext.add_argument("lam")
    ext.add_argument("mu")
    ext.add_argument("point")
    ext.add_argument("--bundle", action="store_true", help="include the action matrices")
    ten = labs.add_parser("tensor", parents=[common], help="V(lam, a) (x) V(mu, b)")
    for arg in ("lam", "a", "mu", "b"):
        ten.add_argument(arg)
    ev = labs.add_parser("eval", parents=[common], help="evaluation module as a JSON bundle")
    ev.add_argument("lam")
    ev.add_argument("point")
    return parser


def _pretty(obj: Any, indent: str = "") -> str:
    if isinstance(obj, dict):
        lines = []
        for k, v in obj.items():
            if isinstance(v, (dict, list)) and v and any(isinstance(x, (dict, list)) for x in
                                                        (v.values() if isinstance(v, dict) else v)):
                lines.append(f"{indent}{k}:")
                lines.append(_pretty(v, indent + "  "))
            else:
                lines.append(f"{indent}{k}: {json.dumps(v)}")
        return "\n".join(lines)
    if isinstance(obj, list):
        if obj and all(isinstance(x, list) for x in obj):
            return "\n".join(f"{indent}{json.dumps(x)}" for x in obj)
        return "\n".join(_pretty(x, indent) if isinstance(x, dict) else f"{indent}{json.dumps(x)}"
                         for x in obj)
    return f"{indent}{json.dumps(obj)}"


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    for flag, default in (("pretty", False), ("certify", False), ("seed", 0)):
        if not hasattr(args, flag):
            setattr(args, flag, default)
    try:
        result = args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (DomainError, NotDominantError, linking.CosetError, linking.CertificationError,
            drinfeld.FactorizationError, loop_modules.HomVanishesError,
            loop_modules.DimensionCapError, loop_modules.NonEquivariantError,
            loop_modules.MixedCharacterError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.pretty:
        print(_pretty(result))
    else:
        print(json.dumps(result, separators=(",", ":")))
    return 0


if __name__ == "__main__":
    sys.exit(main())
