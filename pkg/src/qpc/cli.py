"""Command line front end: ``qpc <command> FILE --q Q``."""

import argparse
import json
import sys

from . import oracle, structure
from .consistency import consistency_report, format_report
from .covers import cover
from .errors import InconsistentPresentation, QpcError
from .pc import eliminate_trivial
from .pcio import format_presentation, parse_json, parse_text, presentation_to_dict
from .qnu import build_nu, build_nu_qperfect, build_tau, diagonal, rho_image
from .qwedge import build_wedge, exterior_center_from_cover, h2, h2_sequence
from .subgrp import subgroup_presentation

EXIT_OK, EXIT_USAGE = 0, 1


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def load(path, check=True):
    text = _read(path)
    if text.lstrip().startswith("{"):
        pres = parse_json(text)
    else:
        pres = parse_text(text).pres
    if check:
        report = consistency_report(pres)
        if report:
            raise InconsistentPresentation("input presentation is inconsistent", report)
    pres, _ = eliminate_trivial(pres)
    return pres


# ------------------------------------------------------------------ output

class Result:
    """A presentation (or plain value) plus comment lines and JSON extras."""

    def __init__(self, command, q=None, pres=None, tails=None, notes=None, data=None, text=None):
        self.command = command
        self.q = q
        self.pres = pres
        self.tails = tails
        self.notes = notes or []
        self.data = data or {}
        self.text = text

    def render(self, fmt):
        if fmt == "json":
            out = {"command": self.command}
            if self.q is not None:
                out["q"] = self.q
            if self.pres is not None:
                out["presentation"] = presentation_to_dict(self.pres, self.tails)
                out["structure"] = structure.describe(self.pres).as_dict()
            out.update(self.data)
            return json.dumps(out, indent=2, sort_keys=True) + "\n"
        parts = []
        if self.text is not None:
            parts.append(self.text)
        if self.pres is not None:
            parts.append(format_presentation(self.pres, self.tails).rstrip("\n"))
            parts.append(f"# structure: {structure.describe(self.pres).display}")
        parts.extend(f"# {line}" for line in self.notes)
        return "\n".join(parts) + "\n"


def _element_map(source, images):
    return {name: source.format_element(x) for name, x in images}


def cmd_check(args):
    pres = load(args.input, check=False)
    report = consistency_report(pres)
    entries = [{"kind": e.kind, "indices": [i + 1 for i in e.indices],
                "left": pres.format_element(e.left), "right": pres.format_element(e.right)}
               for e in report]
    text = "consistent" if not report else format_report(pres, report).rstrip("\n")
    res = Result("check", text=text, data={"consistent": not report, "report": entries})
    return res, (EXIT_OK if not report else InconsistentPresentation.exit_code)


def cmd_cover(args):
    G = load(args.input)
    cov = cover(G, args.q)
    E = cov.E
    tails = [(E.names[i], d) for i, d in zip(cov.tail_indices, cov.tail_orders)]
    notes = [f"E_{args.q}({G.group or 'G'}): {len(tails)} surviving tails"]
    data = {"provenance": {"base": G.group, "tails": [[t, d] for t, d in tails],
                           "transform": cov.transform}}
    return Result("cover", args.q, E, tails, notes, data), EXIT_OK


def _wedge_data(ctx):
    E = ctx.E
    gens = _element_map(E, zip(ctx.wedge_pres.names, ctx.sub.generators))
    return {"cover": presentation_to_dict(E, [(E.names[i], d) for i, d in
                                              zip(ctx.cover.tail_indices, ctx.cover.tail_orders)]),
            "generators_in_cover": gens}


def cmd_wedge(args):
    G = load(args.input)
    ctx = build_wedge(G, args.q)
    notes = [f"{w} = {e}" for w, e in _wedge_data(ctx)["generators_in_cover"].items()]
    return Result("wedge", args.q, ctx.wedge_pres, notes=notes,
                  data={"provenance": _wedge_data(ctx)}), EXIT_OK


def cmd_h2(args):
    G = load(args.input)
    ctx = build_wedge(G, args.q)
    seq = h2_sequence(ctx)
    E = ctx.E
    notes = [f"u{k + 1} = {E.format_element(m)}" for k, m in enumerate(seq.members)]
    return Result("h2", args.q, h2(ctx), notes=notes,
                  data={"provenance": {"generators_in_cover": [E.format_element(m) for m in seq.members]}}), EXIT_OK


def cmd_excenter(args):
    G = load(args.input)
    cov = cover(G, args.q)
    Z = exterior_center_from_cover(cov)
    sub = subgroup_presentation(Z, names="z", group="exterior center")
    gens = [G.format_element(m) for m in Z.members]
    notes = [f"z{k + 1} = {g}" for k, g in enumerate(gens)] or ["trivial"]
    return Result("excenter", args.q, sub.pres, notes=notes,
                  data={"generators_in_G": gens, "trivial": Z.is_trivial()}), EXIT_OK


def cmd_capable(args):
    G = load(args.input)
    Z = exterior_center_from_cover(cover(G, args.q))
    verdict = Z.is_trivial()
    return Result("capable", args.q, text="true" if verdict else "false",
                  data={"capable": verdict}), EXIT_OK


def cmd_tau(args):
    G = load(args.input)
    tau = build_tau(G, args.q)
    fam = {}
    for key, f in tau.relator_families.items():
        fam.setdefault(str(f), []).append(_key_label(tau.pres, key))
    return Result("tau", args.q, tau.pres, data={"provenance": {"families": fam,
                                                                "wedge": _wedge_data(tau.ctx)}}), EXIT_OK


def _key_label(pres, key):
    kind, i, j = key
    if kind == "pow":
        return f"pow {pres.names[i]}"
    return f"{kind} {pres.names[i]}^{pres.names[j]}"


def _build_nu(G, q, shortcut):
    if shortcut:
        return build_nu_qperfect(G, q)
    return build_nu(G, q)


def _nu_images(nu):
    P = nu.pres
    out = {}
    for i, name in enumerate(nu.G.names):
        out[name] = P.format_element(nu.images_g[i])
        out[f"{name}_phi"] = P.format_element(nu.images_phi[i])
        if nu.images_hat:
            out[f"{name}_hat"] = P.format_element(nu.images_hat[i])
    return out


def cmd_nu(args):
    G = load(args.input)
    nu = _build_nu(G, args.q, args.q_perfect_shortcut)
    images = _nu_images(nu)
    notes = [f"{k} -> {v}" for k, v in images.items()]
    return Result("nu", args.q, nu.pres, notes=notes,
                  data={"provenance": {"images": images, "shortcut": nu.shortcut}}), EXIT_OK


def cmd_tensor(args):
    G = load(args.input)
    nu = _build_nu(G, args.q, args.q_perfect_shortcut)
    D = diagonal(nu)
    P = nu.pres
    ddesc = structure.describe(D)
    gens = {name: P.format_element(x) for name, x in zip(nu.tensor_pres.names, nu.tensor_sub.generators)}
    notes = [f"{k} = {v} in nu" for k, v in gens.items()]
    notes.append(f"diagonal: {ddesc.display}")
    notes += [f"diagonal generator {P.format_element(m)}" for m in nu.delta.members]
    notes.append("image of rho: " + (", ".join(G.format_element(m) for m in rho_image(nu).members) or "trivial"))
    data = {"diagonal": {"presentation": presentation_to_dict(D), "structure": ddesc.as_dict(),
                         "generators_in_nu": [P.format_element(m) for m in nu.delta.members]},
            "provenance": {"nu": presentation_to_dict(P), "images": _nu_images(nu),
                           "generators_in_nu": gens, "shortcut": nu.shortcut}}
    return Result("tensor", args.q, nu.tensor_pres, notes=notes, data=data), EXIT_OK


def cmd_describe(args):
    G = load(args.input)
    d = structure.describe(G)
    return Result("describe", text=d.display, data={"structure": d.as_dict()}), EXIT_OK


def cmd_oracle(args):
    G = load(args.input)
    table = oracle.enumerate(G)
    Z = oracle.brute_center(table)
    text = "\n".join([f"order {len(table)}", f"abelian {str(table.is_abelian()).lower()}",
                      "center " + (", ".join(G.format_element(z) for z in Z))])
    data = {"order": len(table), "abelian": table.is_abelian(),
            "center": [G.format_element(z) for z in Z]}
    return Result("oracle", text=text, data=data), EXIT_OK


COMMANDS = {
    "check": (cmd_check, "report failing consistency overlaps", False),
    "cover": (cmd_cover, "the q-cover E_q(G)", True),
    "wedge": (cmd_wedge, "the q-exterior square", True),
    "h2": (cmd_h2, "H_2(G, Z_q)", True),
    "excenter": (cmd_excenter, "the q-exterior center", True),
    "capable": (cmd_capable, "whether G is q-capable", True),
    "tau": (cmd_tau, "the group tau^q(G)", True),
    "nu": (cmd_nu, "the group nu^q(G)", True),
    "tensor": (cmd_tensor, "the q-tensor square and its diagonal", True),
    "describe": (cmd_describe, "structure summary of a presentation", False),
}


def _nonneg(text):
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 0:
        raise argparse.ArgumentTypeError("q must be nonnegative")
    return v


def build_parser():
    p = _Parser(prog="qpc", description="q-tensor squares of polycyclic groups")
    sub = p.add_subparsers(dest="command", parser_class=_Parser, metavar="COMMAND")
    for name, (_, help_text, needs_q) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("input", help="presentation file, or - for stdin")
        if needs_q:
            sp.add_argument("--q", type=_nonneg, required=True)
        if name in ("nu", "tensor"):
            sp.add_argument("--q-perfect-shortcut", action="store_true",
                            help="use the tau presentation directly (G must be q-perfect)")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("-o", "--output", help="write to this file instead of stdout")
    sp = sub.add_parser("oracle")
    sp.add_argument("input")
    sp.add_argument("--format", choices=("text", "json"), default="text")
    sp.add_argument("-o", "--output")
    return p


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def run(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if not args.command:
            raise UsageError("missing command")
        handler = cmd_oracle if args.command == "oracle" else COMMANDS[args.command][0]
        result, code = handler(args)
        _emit(result.render(args.format), args.output)
        return code
    except UsageError as exc:
        sys.stderr.write(f"qpc: usage error: {exc}\n")
        parser.print_usage(sys.stderr)
        return EXIT_USAGE
    except InconsistentPresentation as exc:
        sys.stderr.write(f"qpc: {exc}\n")
        if exc.report:
            sys.stderr.write(f"{len(exc.report)} failing overlaps\n")
        return exc.exit_code
    except QpcError as exc:
        sys.stderr.write(f"qpc: {type(exc).__name__}: {exc}\n")
        return exc.exit_code
    except RecursionError:
        sys.stderr.write("qpc: internal error: recursion limit reached\n")
        return 5


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
