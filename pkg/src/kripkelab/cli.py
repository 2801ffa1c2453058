"""Command-line front end.

Every report is a structure file: human-readable lines are ``#`` comments
and witnesses are ordinary ``model``/``frame`` blocks, so the part before
the ``---`` separator can be fed back to ``read_structure``.  After the
separator come ``key=value`` lines for scripting.

Exit codes: 0 the property holds (or the reduction agrees), 1 it fails,
2 usage, input or budget errors.
"""

from __future__ import annotations

import argparse
import random
import sys

from . import __version__
from .decide import frame_valid, k_valid, oracle_property, semantic_property
from .decide.properties import KINDS, normalize_kind
from .errors import BudgetExceeded, KripkeLabError, ParseError
from .folog import ebounded_game_winner, fo_eval
from .gallery import (fo_formula, gt_definable_check,
                      horn_forward_chain, horn_to_frame, make_An_Bn, make_dju_pair,
                      make_parity_frames, modal_formula, parse_horn, parse_set_splitting,
                      set_splitting_to_frame, solve_set_splitting)
from .kripke import format_structure, parse_structures, to_dot
from .kripke.enumerate import random_frame
from .kripke.structures import FOStructure, Model
from .programs import ca_to_program
from .programs import to_text as program_text
from .syntax import modal
from .syntax.parsing import parse_fo, parse_modal

MODAL_NAMES = {"mckinsey": "mckinsey", "lob": "lob", "phih": "phih", "tc": "tc_axioms",
               "tc_axioms": "tc_axioms", "horn_cover": "horn_cover"}
FO_NAMES = {"chi": "chi", "psi": "dju_psi", "psi_x": "psi_x", "phi_u": "phi_u",
            "theta": "theta", "horn_sat": "horn_sat", "no_horn_sat": "no_horn_sat",
            "func_rplus": "func_rplus"}
FAMILIES = ("parity", "anbn", "dju", "random")


class UsageError(Exception):
    pass


class Report:
    def __init__(self):
        self.lines = []
        self.data = []

    def say(self, text=""):
        for line in str(text).splitlines() or [""]:
            self.lines.append(f"# {line}".rstrip())

    def block(self, text):
        self.lines.extend(text.rstrip("\n").splitlines())

    def put(self, key, value):
        self.data.append((key, value))

    def render(self):
        out = self.lines + ["---"] + [f"{k}={v}" for k, v in self.data]
        return "\n".join(out) + "\n"


# inputs --------------------------------------------------------------------------------

def _read(path):
    try:
        with open(path) as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _modal(text):
    if text in MODAL_NAMES:
        return modal_formula(MODAL_NAMES[text])
    return parse_modal(text)


def _formula(text):
    """A built-in name or modal text, falling back to FO text."""
    if text in MODAL_NAMES:
        return modal_formula(MODAL_NAMES[text])
    if text in FO_NAMES:
        return fo_formula(FO_NAMES[text])
    try:
        return parse_modal(text)
    except ParseError as modal_error:
        try:
            return parse_fo(text)
        except ParseError:
            raise modal_error from None


def _family(name, n, seed):
    if name == "parity":
        F, G = make_parity_frames(n)
        return [F, G]
    if name == "anbn":
        return list(make_An_Bn(n))
    if name == "dju":
        return list(make_dju_pair())
    if name == "random":
        return [random_frame(random.Random(seed), n, name=f"random{n}")]
    raise UsageError(f"unknown family {name!r}; expected one of {', '.join(FAMILIES)}")


def _structures(args):
    if getattr(args, "frame", None):
        items = parse_structures(_read(args.frame))
    elif getattr(args, "family", None):
        if args.n is None and args.family not in ("dju",):
            raise UsageError(f"--family {args.family} needs --n")
        items = _family(args.family, args.n if args.n is not None else 0, args.seed)
    else:
        raise UsageError("give --frame FILE or --family NAME")
    if not items:
        raise UsageError("no structures in input")
    return items


def _pick(items, member):
    if member is None:
        return items[0]
    for obj in items:
        if obj.name == member:
            return obj
    if member.isdigit() and int(member) < len(items):
        return items[int(member)]
    raise UsageError(f"no structure named {member!r}; have {', '.join(o.name for o in items)}")


# witnesses -----------------------------------------------------------------------------

def _clean_name(p, taken):
    base = p.replace("#", "_")
    name = base
    i = 1
    while name in taken:
        name = f"{base}_{i}"
        i += 1
    return name


def _renaming(names):
    """Map props that cannot appear in files (fresh ``#`` names) to plain ones."""
    taken = {p for p in names if "#" not in p}
    out = {}
    for p in sorted(names):
        if "#" in p:
            out[p] = _clean_name(p, taken)
            taken.add(out[p])
        else:
            out[p] = p
    return out


def _rename_formula(phi, mapping):
    for old, new in mapping.items():
        if old != new:
            phi = modal.substitute(phi, old, modal.Prop(new))
    return phi


def _emit_witness(report, model, world, formula=None, name="witness"):
    mapping = _renaming(set(model.valuation) | (modal.props(formula) if formula is not None else set()))
    val = {mapping[p]: ws for p, ws in model.valuation.items()}
    M = Model(model.names, model.relations, val, name)
    report.say("witness:")
    report.block(format_structure(M))
    report.put("witness_world", M.names[world])
    if formula is not None:
        report.put("witness_false", _rename_formula(formula, mapping))
    return mapping


# verbs ---------------------------------------------------------------------------------

def cmd_check_valid(args, report):
    phi = _modal(args.formula)
    verdict = k_valid(phi, args.budget)
    report.say(f"formula: {phi}")
    report.say("valid over all Kripke models" if verdict else "not valid")
    report.put("formula", phi)
    report.put("result", "valid" if verdict else "invalid")
    if not verdict:
        _emit_witness(report, verdict.model, verdict.world, phi)
    return 0 if verdict else 1


def cmd_check_frame(args, report):
    obj = _pick(_structures(args), args.member)
    phi = _formula(args.formula)
    report.put("structure", obj.name)
    report.put("formula", phi)
    if isinstance(phi, modal.Formula):
        if isinstance(obj, FOStructure):
            obj = obj.to_model().frame
        frame = obj.frame if isinstance(obj, Model) else obj
        verdict = frame_valid(frame, phi, args.budget_bits)
        report.say(f"frame {frame.name} ({frame.n} worlds), formula {phi}")
        report.say("valid on the frame" if verdict else "not valid on the frame")
        report.put("result", "valid" if verdict else "invalid")
        if not verdict:
            report.put("valuation_index", verdict.details["valuation_index"])
            _emit_witness(report, verdict.model, verdict.world, phi)
        return 0 if verdict else 1
    holds = fo_eval(obj, phi)
    report.say(f"structure {obj.name} ({obj.n} elements), sentence {phi}")
    report.say("true" if holds else "false")
    report.put("result", "true" if holds else "false")
    return 0 if holds else 1


def cmd_check_property(args, report):
    kind = normalize_kind(args.kind)
    phi = _modal(args.formula)
    verdict = semantic_property(kind, phi, args.var, args.n, args.budget)
    report.say(f"{kind} in {args.var}: {phi}")
    report.put("kind", kind)
    report.put("formula", phi)
    report.put("var", args.var)
    if args.n is not None:
        report.put("n", args.n)
    report.put("result", "holds" if verdict else "fails")
    if args.oracle:
        oracle = oracle_property(kind, phi, args.var, args.n, args.oracle)
        report.say(f"oracle over models with <= {args.oracle} worlds: {'holds' if oracle else 'fails'}")
        report.put("oracle", "holds" if oracle else "fails")
    if verdict:
        report.say("the property holds")
        return 0
    report.say("the property fails; the witness falsifies the reduction validity at the world")
    _emit_witness(report, verdict.model, verdict.world, verdict.details["validity"])
    return 1


def cmd_compile_program(args, report):
    phi = _modal(args.formula)
    report.put("formula", phi)
    try:
        prog = ca_to_program(phi, args.var)
    except KripkeLabError as e:
        report.say(f"not compilable: {e}")
        report.put("result", "rejected")
        return 1
    report.say(f"formula: {phi}")
    report.say(f"program: {program_text(prog)}")
    report.put("program", program_text(prog))
    report.put("result", "compiled")
    return 0


def cmd_game(args, report):
    if args.left or args.right:
        if not (args.left and args.right):
            raise UsageError("give both --left and --right")
        A = _pick(parse_structures(_read(args.left)), None)
        B = _pick(parse_structures(_read(args.right)), None)
    else:
        A, B = _structures(args)[:2]
    rounds = args.rounds if args.rounds is not None else (args.n or 1)
    start = tuple(args.start) if args.start else None
    if start is None and args.family == "anbn":
        start = ("a", "b")
    winner = ebounded_game_winner(A, B, rounds, start, args.both_directions)
    report.say(f"{rounds}-round exists-bounded game on ({A.name}, {B.name})"
               + (f" from ({start[0]};{start[1]})" if start else ""))
    report.say(f"winner: {winner}")
    report.put("rounds", rounds)
    report.put("winner", winner)
    return 0 if str(winner) == "Duplicator" else 1


def cmd_reduce_setsplit(args, report):
    inst = parse_set_splitting(_read(args.input))
    frame = set_splitting_to_frame(inst)
    report.say(f"ground set: {' '.join(inst.ground)}; family members: {len(inst.family)}")
    report.block(format_structure(frame))
    if args.out:
        _write(args.out, format_structure(frame))
    if not args.verify:
        report.put("result", "reduced")
        return 0
    split = solve_set_splitting(inst)
    verdict = frame_valid(frame, modal_formula("mckinsey"), args.budget_bits)
    report.put("splitting", "yes" if split else "no")
    report.put("frame_validates_mckinsey", "yes" if verdict else "no")
    if split:
        report.say(f"splitting: {{{' '.join(sorted(split[0]))}}} / {{{' '.join(sorted(split[1]))}}}")
    agree = (split is not None) == (not verdict)
    report.say("reduction agrees" if agree else "reduction disagrees")
    report.put("result", "agree" if agree else "disagree")
    if not verdict:
        _emit_witness(report, verdict.model, verdict.world, modal_formula("mckinsey"))
    return 0 if agree else 1


def cmd_reduce_horn(args, report):
    alpha = parse_horn(_read(args.input))
    frame = horn_to_frame(alpha)
    report.say(f"variables: {len(alpha.variables)}; clauses: {len(alpha.clauses)}")
    report.block(format_structure(frame))
    if args.out:
        _write(args.out, format_structure(frame))
    if not args.verify:
        report.put("result", "reduced")
        return 0
    chained = horn_forward_chain(alpha)
    verdict = frame_valid(frame, modal_formula("phih"), args.budget_bits)
    report.put("horn", "sat" if chained.sat else "unsat")
    report.put("frame_validates_phih", "yes" if verdict else "no")
    if chained.sat:
        true = [v for v, t in chained.assignment.items() if t]
        report.say(f"least model makes true: {' '.join(true) or '(nothing)'}")
    agree = chained.sat != bool(verdict)
    report.say("reduction agrees" if agree else "reduction disagrees")
    report.put("result", "agree" if agree else "disagree")
    if not verdict:
        _emit_witness(report, verdict.model, verdict.world, modal_formula("phih"))
    return 0 if agree else 1


def cmd_gen(args, report):
    items = _structures(args)
    text = "".join(format_structure(obj) for obj in items)
    if args.out:
        _write(args.out, text)
    report.block(text)
    report.put("structures", " ".join(obj.name for obj in items))
    return 0


CLASSES = {
    "all": lambda F: True,
    "reflexive": lambda F: all(F.succ("R")[w] >> w & 1 for w in F.worlds),
    "has-reflexive-point": lambda F: any(F.succ("R")[w] >> w & 1 for w in F.worlds),
    "irreflexive": lambda F: not any(F.succ("R")[w] >> w & 1 for w in F.worlds),
    "serial": lambda F: all(F.succ("R")[w] for w in F.worlds),
    "transitive": lambda F: all(F.succ("R")[v] & ~F.succ("R")[w] == 0
                                for w in F.worlds for v in F.worlds if F.succ("R")[w] >> v & 1),
    "at-most-2-worlds": lambda F: F.n <= 2,
}


def cmd_gt_define(args, report):
    if args.cls not in CLASSES:
        raise UsageError(f"unknown class {args.cls!r}; expected one of {', '.join(CLASSES)}")
    result = gt_definable_check(CLASSES[args.cls], args.max_size)
    report.say(f"class: {args.cls}")
    report.say(result.summary())
    if result.counterexample:
        G, H = result.counterexample
        report.block(format_structure(G))
        report.block(format_structure(H))
    report.put("class", args.cls)
    report.put("max_size", args.max_size)
    report.put("closed", "yes" if result.closed else "no")
    report.put("defined", "yes" if result.defined else "no")
    return 0 if result.closed and result.defined else 1


def cmd_export_dot(args, report):
    items = _structures(args)
    text = "".join(to_dot(obj) for obj in items)
    if args.out:
        _write(args.out, text)
        report.say(f"wrote {len(items)} graph(s) to {args.out}")
    else:
        report.say("DOT output:")
        for line in text.splitlines():
            report.say(line)
    report.put("graphs", len(items))
    return 0


def _write(path, text):
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as e:
        raise UsageError(f"cannot write {path}: {e.strerror}") from None


# argument parsing ----------------------------------------------------------------------

def _positive(text):
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return value


def _natural(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return value


def _source_options(p):
    p.add_argument("--frame", help="structure file")
    p.add_argument("--family", choices=FAMILIES, help="built-in family")
    p.add_argument("--n", type=_natural, help="family parameter")
    p.add_argument("--seed", type=int, default=0, help="seed for the random family")
    p.add_argument("--member", help="structure name or index within the input (default: first)")


def build_parser():
    parser = argparse.ArgumentParser(prog="kripkelab", description="Finite modal and first-order model theory workbench.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("check-valid", help="validity over all Kripke models")
    p.add_argument("--formula", required=True)
    p.add_argument("--budget", type=_positive, default=200_000, help="tableau node budget")
    p.set_defaults(run=cmd_check_valid)

    p = sub.add_parser("check-frame", help="frame validity, or FO truth on a structure")
    _source_options(p)
    p.add_argument("--formula", required=True)
    p.add_argument("--budget-bits", type=_positive, help="valuation bit budget")
    p.set_defaults(run=cmd_check_frame)

    p = sub.add_parser("check-property", help="semantic property of a formula in a proposition")
    p.add_argument("--kind", required=True, help=f"one of {', '.join(KINDS)} (or ca, mono, induced, cont)")
    p.add_argument("--formula", required=True)
    p.add_argument("--var", default="p")
    p.add_argument("--n", type=_natural, help="bound for n_continuous")
    p.add_argument("--budget", type=_positive, default=200_000)
    p.add_argument("--oracle", type=_positive, help="also run the brute-force oracle up to this many worlds")
    p.set_defaults(run=cmd_check_property)

    p = sub.add_parser("compile-program", help="compile a completely additive formula to a program")
    p.add_argument("--formula", required=True)
    p.add_argument("--var", default="p")
    p.set_defaults(run=cmd_compile_program)

    p = sub.add_parser("game", help="exists-bounded game")
    _source_options(p)
    p.add_argument("--left")
    p.add_argument("--right")
    p.add_argument("--rounds", type=_natural)
    p.add_argument("--start", nargs=2, metavar=("A", "B"))
    p.add_argument("--both-directions", action="store_true")
    p.set_defaults(run=cmd_game)

    for verb, fn, what in (("reduce-setsplit", cmd_reduce_setsplit, "Set Splitting instance"),
                           ("reduce-horn", cmd_reduce_horn, "Horn instance")):
        p = sub.add_parser(verb, help=f"encode a {what} as a frame")
        p.add_argument("--in", dest="input", required=True)
        p.add_argument("--out")
        p.add_argument("--verify", action="store_true", help="solve both sides and compare")
        p.add_argument("--budget-bits", type=_positive)
        p.set_defaults(run=fn)

    p = sub.add_parser("gen", help="write a built-in family in the structure format")
    _source_options(p)
    p.add_argument("--out")
    p.set_defaults(run=cmd_gen)

    p = sub.add_parser("gt-define", help="bounded modal definability check for a frame class")
    p.add_argument("--class", dest="cls", required=True, help=", ".join(CLASSES))
    p.add_argument("--max-size", type=_positive, default=3)
    p.set_defaults(run=cmd_gt_define)

    p = sub.add_parser("export-dot", help="DOT export")
    _source_options(p)
    p.add_argument("--out")
    p.set_defaults(run=cmd_export_dot)
    return parser


def run(argv=None, out=None, err=None):
    """Run one command; returns ``(exit code, report text)``."""
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0), ""
    report = Report()
    try:
        code = args.run(args, report)
    except UsageError as e:
        print(f"error: {e}", file=err)
        return 2, ""
    except ParseError as e:
        print(f"parse error: {e}", file=err)
        return 2, ""
    except BudgetExceeded as e:
        print(f"budget exceeded: {e}", file=err)
        return 2, ""
    except (KripkeLabError, ValueError) as e:
        print(f"error: {e}", file=err)
        return 2, ""
    text = report.render()
    out.write(text)
    return code, text


def main(argv=None):
    code, _ = run(argv)
    return code


if __name__ == "__main__":
    sys.exit(main())
