"""Command-line front end: reproducible batch runs over event files.

Nine subcommands wire the library together::

    ingest       normalize an event file, persist the node id map
    snapshot     materialize the graph at a time point as an edge list
    score        decay-score edges of a snapshot
    verify       compare closed-form scores against the brute-force oracle
    evaluate     temporal-split decay evaluation (average precision)
    evaluate-lp  the creation-side mirror of evaluate
    survival     censored-exponential lifetime fit + survival curve
    gen          synthesize an event stream with controllable decay
    sweep        evaluate the full model x measure x combo grid

Conventions shared by all subcommands: ``--input``/``--output`` accept
``-`` for stdin/stdout; results are tab-separated with a ``#`` header
line; run parameters echo as ``key=value`` lines on stdout (diverted to
stderr when the data itself targets stdout).  Every file-writing run also
writes ``<output>.manifest`` — a key=value file of the fully resolved
configuration that can be fed back through ``--config`` to reproduce the
output byte for byte.  Flags given explicitly always override config-file
values.  Exit status: 0 success, 1 usage error, 2 data/config error.
"""

from __future__ import annotations

import argparse
import sys
from contextlib import contextmanager

import numpy as np

from . import __version__
from .datasets import random_directed_graph, random_reciprocal_graph
from .evaluation import (average_precision, edge_lifetimes, evaluate,
                         evaluate_link_prediction, fit_exponential_half_life,
                         survival_curve, temporal_split)
from .events import EventFormatError, read_events
from .generate import GenConfig, deletion_share, generate
from .graph import DegreeCombination, snapshot_at
from .oracle import check_closed_form
from .scoring import Measure, ScoreSpec, all_specs, score_batch

__all__ = ["main"]

_SCORE_FMT = "%.12g"


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage errors; the contract here reserves 2 for
    data errors, so usage problems are remapped to exit status 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


# ---------------------------------------------------------------------------
# plumbing: streams, config files, manifests, summaries

@contextmanager
def _open_in(path):
    if path == "-":
        yield sys.stdin
    else:
        with open(path, "r", encoding="utf-8") as handle:
            yield handle


@contextmanager
def _open_out(path):
    if path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as handle:
            yield handle


def _summary_stream(args) -> object:
    """key=value summaries go to stdout unless the data does."""
    if getattr(args, "output", None) == "-":
        return sys.stderr
    return sys.stdout


def _emit(stream, items) -> None:
    for key, value in items:
        stream.write(f"{key}={value}\n")


def _fmt_value(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _parse_config_file(path) -> dict[str, str]:
    values: dict[str, str] = {}
    with _open_in(path) as handle:
        for lineno, line in enumerate(handle, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            if "=" not in text:
                raise ValueError(f"{path}: line {lineno}: expected key=value")
            key, _, raw = text.partition("=")
            values[key.strip().lower().replace("-", "_")] = raw.strip()
    return values


def _flag_given(action, argv) -> bool:
    for token in argv:
        if token in action.option_strings:
            return True
        if any(token.startswith(opt + "=") for opt in action.option_strings):
            return True
    return False


def _coerce(action, raw: str):
    if isinstance(action, argparse._StoreTrueAction):
        lowered = raw.lower()
        if lowered in ("true", "1", "yes"):
            return True
        if lowered in ("false", "0", "no"):
            return False
        raise ValueError(f"cannot read {raw!r} as a boolean for --{action.dest}")
    value = raw if action.type is None else action.type(raw)
    if action.choices is not None and value not in action.choices:
        raise ValueError(
            f"{value!r} is not a valid choice for --{action.dest} "
            f"(choose from {', '.join(map(str, action.choices))})")
    return value


def _apply_config(args, argv) -> None:
    """Fill argument values from ``--config`` without overriding explicit
    flags; the file uses the same keys the manifest writes."""
    values = _parse_config_file(args.config)
    sub = values.pop("subcommand", None)
    if sub is not None and sub != args.subcommand:
        raise ValueError(
            f"config was written by subcommand {sub!r}, not {args.subcommand!r}")
    values.pop("version", None)
    actions = {a.dest: a for a in args._parser._actions
               if a.option_strings and a.dest not in ("help", "config")}
    for key, raw in values.items():
        action = actions.get(key)
        if action is None:
            raise ValueError(f"unknown config key {key!r} for {args.subcommand}")
        if not _flag_given(action, argv):
            setattr(args, key, _coerce(action, raw))


def _write_manifest(args) -> None:
    output = getattr(args, "output", None)
    if output is None or output == "-":
        return
    entries = {"subcommand": args.subcommand, "version": __version__}
    for action in args._parser._actions:
        if not action.option_strings or action.dest in ("help", "config"):
            continue
        value = getattr(args, action.dest, None)
        if value is None:
            continue
        entries[action.dest.replace("_", "-")] = _fmt_value(value)
    with open(output + ".manifest", "w", encoding="utf-8") as handle:
        for key in sorted(entries):
            handle.write(f"{key}={entries[key]}\n")


def _read_input(args, **kwargs):
    with _open_in(args.input) as handle:
        return read_events(handle, **kwargs)


def _require_seed(args) -> None:
    if args.seed is None:
        args._parser.error("--seed is required (all randomness flows from it)")


def _spec_from_args(args) -> ScoreSpec:
    return ScoreSpec.from_strings(
        args.model, args.measure, args.combo,
        getattr(args, "adad_complement_weights", False))


def _write_ranking(args, tel, result) -> None:
    if getattr(args, "output", None) is None:
        return
    ids = tel.node_ids
    with _open_out(args.output) as handle:
        handle.write("# src\tdst\tscore\tlabel\trank\n")
        for rank, ((i, j), score, label) in enumerate(result.ranking, start=1):
            handle.write(f"{ids[i]}\t{ids[j]}\t{_SCORE_FMT % score}"
                         f"\t{label}\t{rank}\n")
    _write_manifest(args)


# ---------------------------------------------------------------------------
# subcommands

def _cmd_ingest(args) -> int:
    tel = _read_input(args, self_loops=args.self_loops,
                      strict_deletes=args.strict_deletes)
    with _open_out(args.output) as handle:
        tel.write(handle)
    if args.id_map is not None:
        tel.write_id_map(args.id_map)
    _write_manifest(args)
    items = [("events", len(tel)), ("nodes", tel.node_count)]
    items += [(key.replace("_", "-"), value)
              for key, value in sorted(tel.stats.as_dict().items())]
    _emit(_summary_stream(args), items)
    return 0


def _cmd_snapshot(args) -> int:
    tel = _read_input(args)
    g = snapshot_at(tel, args.at)
    ids = tel.node_ids
    with _open_out(args.output) as handle:
        handle.write("# src\tdst\n")
        for i, j in g.edges():
            handle.write(f"{ids[i]}\t{ids[j]}\n")
    _write_manifest(args)
    _emit(_summary_stream(args),
          [("at", _fmt_value(args.at)), ("nodes", g.node_count),
           ("edges", g.edge_count)])
    return 0


def _load_pairs(path, tel) -> list[tuple[int, int]]:
    index = {token: k for k, token in enumerate(tel.node_ids)}
    pairs = []
    with _open_in(path) as handle:
        for lineno, line in enumerate(handle, start=1):
            text = line.strip()
            if not text or text.startswith("#"):
                continue
            fields = text.split()
            if len(fields) != 2:
                raise ValueError(f"{path}: line {lineno}: expected 'src<TAB>dst'")
            try:
                pairs.append((index[fields[0]], index[fields[1]]))
            except KeyError as exc:
                raise ValueError(
                    f"{path}: line {lineno}: unknown node {exc.args[0]!r}") from None
    return pairs


def _cmd_score(args) -> int:
    tel = _read_input(args)
    at = tel.time_last if args.at is None else args.at
    g = snapshot_at(tel, at)
    if args.pairs_file is not None:
        pairs = _load_pairs(args.pairs_file, tel)
    else:
        pairs = g.edges()
    spec = _spec_from_args(args)
    scored = score_batch(g, pairs, spec)
    ids = tel.node_ids
    with _open_out(args.output) as handle:
        handle.write("# src\tdst\tscore\n")
        for edge in scored:
            handle.write(f"{ids[edge.src]}\t{ids[edge.dst]}\t"
                         f"{_SCORE_FMT % edge.score}\n")
    _write_manifest(args)
    items = list(spec.fields().items())
    items += [("at", _fmt_value(at)), ("pairs", len(scored))]
    _emit(_summary_stream(args), items)
    return 0


def _cmd_verify(args) -> int:
    if args.random_nodes is not None:
        rng = np.random.default_rng(0 if args.seed is None else args.seed)
        make = random_reciprocal_graph if args.reciprocal else random_directed_graph
        g = make(args.random_nodes, args.density, rng)
    else:
        tel = _read_input(args)
        g = snapshot_at(tel, tel.time_last if args.at is None else args.at)
    spec = _spec_from_args(args)
    report = check_closed_form(g, spec, pairs=args.pairs,
                               max_pairs=args.max_pairs,
                               seed=0 if args.seed is None else args.seed)
    _emit(sys.stdout, report.as_dict().items())
    return 0


def _cut_time(tel, fraction: float) -> float:
    return tel.time_first + fraction * (tel.time_last - tel.time_first)


def _cmd_evaluate(args) -> int:
    _require_seed(args)
    tel = _read_input(args)
    spec = _spec_from_args(args)
    split = temporal_split(tel, args.fraction, seed=args.seed)
    result = evaluate(tel, spec, args.fraction, seed=args.seed,
                      tie_break=args.tie_break, split=split)
    _write_ranking(args, tel, result)
    if args.survival_output is not None:
        curve = survival_curve(edge_lifetimes(tel))
        with _open_out(args.survival_output) as handle:
            handle.write("# t\tfraction_surviving\n")
            for t, fraction in curve:
                handle.write(f"{_SCORE_FMT % t}\t{_SCORE_FMT % fraction}\n")
    items = list(spec.fields().items())
    items += [("fraction", _fmt_value(args.fraction)),
              ("tie-break", args.tie_break),
              ("t1", _SCORE_FMT % split.t1),
              ("positives", result.positives),
              ("ap", _SCORE_FMT % result.ap),
              ("seed", args.seed)]
    _emit(_summary_stream(args), items)
    return 0


def _cmd_evaluate_lp(args) -> int:
    _require_seed(args)
    tel = _read_input(args)
    measure = Measure.parse(args.measure)
    combo = DegreeCombination.parse(args.combo)
    result = evaluate_link_prediction(tel, measure, combo, args.fraction,
                                      seed=args.seed, tie_break=args.tie_break)
    _write_ranking(args, tel, result)
    _emit(_summary_stream(args),
          [("measure", args.measure), ("combo", args.combo),
           ("fraction", _fmt_value(args.fraction)),
           ("tie-break", args.tie_break),
           ("t1", _SCORE_FMT % _cut_time(tel, args.fraction)),
           ("positives", result.positives),
           ("ap", _SCORE_FMT % result.ap),
           ("seed", args.seed)])
    return 0


def _cmd_survival(args) -> int:
    tel = _read_input(args)
    lifetimes = edge_lifetimes(tel)
    fit = fit_exponential_half_life(lifetimes)
    if args.output is not None:
        with _open_out(args.output) as handle:
            handle.write("# t\tfraction_surviving\n")
            for t, fraction in survival_curve(lifetimes):
                handle.write(f"{_SCORE_FMT % t}\t{_SCORE_FMT % fraction}\n")
        _write_manifest(args)
    _emit(_summary_stream(args),
          [("half-life", _SCORE_FMT % fit.half_life),
           ("rate", _SCORE_FMT % fit.rate),
           ("lifetimes-used", fit.lifetimes_used),
           ("censored", fit.censored)])
    return 0


def _cmd_gen(args) -> int:
    _require_seed(args)
    config = GenConfig(seed=args.seed, n_nodes=args.n_nodes,
                       n_add_events=args.n_add_events,
                       attach_exponent=args.attach_exponent,
                       decay_half_life=args.decay_half_life,
                       decay_bias=args.decay_bias,
                       hazard_multiplier=args.hazard_multiplier,
                       deletion_share_target=args.deletion_share_target,
                       span=args.span).validated()
    args.span = config.span  # record the resolved window in the manifest
    tel = generate(config)
    with _open_out(args.output) as handle:
        tel.write(handle)
    if args.id_map is not None:
        tel.write_id_map(args.id_map)
    _write_manifest(args)
    _emit(_summary_stream(args),
          [("events", len(tel)), ("nodes", tel.node_count),
           ("deletion-share", _SCORE_FMT % deletion_share(tel)),
           ("span", _fmt_value(config.span)), ("seed", args.seed)])
    return 0


def _cmd_sweep(args) -> int:
    _require_seed(args)
    tel = _read_input(args)
    split = temporal_split(tel, args.fraction, seed=args.seed)
    with _open_out(args.output) as handle:
        handle.write("# model\tmeasure\tcombo\tap\tpositives\n")
        for spec in all_specs():
            result = evaluate(tel, spec, args.fraction, seed=args.seed,
                              tie_break=args.tie_break, split=split)
            handle.write(f"{spec.model.value}\t{spec.measure.value}\t"
                         f"{spec.combo.value}\t{_SCORE_FMT % result.ap}\t"
                         f"{result.positives}\n")
    _write_manifest(args)
    _emit(_summary_stream(args),
          [("rows", len(all_specs())), ("t1", _SCORE_FMT % split.t1),
           ("positives", len(split.test_set)), ("seed", args.seed)])
    return 0


# ---------------------------------------------------------------------------
# parser assembly

def _add_common(sub, output_default="-") -> None:
    sub.add_argument("--input", default="-", metavar="PATH",
                     help="event file ('-' for stdin; default)")
    if output_default is not argparse.SUPPRESS:
        sub.add_argument("--output", default=output_default, metavar="PATH",
                         help="result path ('-' for stdout)")
    sub.add_argument("--config", metavar="PATH",
                     help="key=value defaults (explicit flags override); "
                          "a previous run's .manifest works here")


def _add_spec_flags(sub, with_model=True) -> None:
    if with_model:
        sub.add_argument("--model", default="score",
                         choices=["score", "network"],
                         help="decay model (default score)")
    sub.add_argument("--measure", default="pa",
                     choices=["pa", "cn", "cos", "jacc", "adad"],
                     help="link-prediction measure (default pa)")
    sub.add_argument("--combo", default="sym",
                     choices=["sym", "asym", "in", "out"],
                     help="degree combination (default sym)")
    if with_model:
        sub.add_argument("--adad-complement-weights", action="store_true",
                         help="weight adad by complement degrees n-1-d(k) "
                              "instead of original degrees")


def _add_eval_flags(sub) -> None:
    sub.add_argument("--fraction", type=float, default=0.75,
                     help="temporal cut position in (0,1) (default 0.75)")
    sub.add_argument("--tie-break", default="lexicographic",
                     choices=["lexicographic", "expected"],
                     help="equal-score policy: deterministic endpoint order "
                          "or closed-form expected AP (default lexicographic)")
    sub.add_argument("--seed", type=int, help="RNG seed (required)")


def _build_parser() -> _Parser:
    parser = _Parser(prog="linkdecay",
                     description="Predict and evaluate edge decay in "
                                 "evolving directed networks.")
    parser.add_argument("--version", action="version",
                        version=f"%(prog)s {__version__}")
    subs = parser.add_subparsers(dest="subcommand", metavar="SUBCOMMAND",
                                 parser_class=_Parser, required=True)

    sub = subs.add_parser("ingest", help="normalize an event file")
    _add_common(sub)
    sub.add_argument("--id-map", metavar="PATH",
                     help="write the node<TAB>index map here")
    sub.add_argument("--self-loops", default="skip", choices=["skip", "error"],
                     help="policy for src == dst records (default skip)")
    sub.add_argument("--strict-deletes", action="store_true",
                     help="fail on deletes of absent edges instead of counting them")
    sub.set_defaults(func=_cmd_ingest)

    sub = subs.add_parser("snapshot", help="edge list of the graph at a time")
    _add_common(sub)
    sub.add_argument("--at", type=float, required=True, metavar="T",
                     help="snapshot time")
    sub.set_defaults(func=_cmd_snapshot)

    sub = subs.add_parser("score", help="decay-score edges of a snapshot")
    _add_common(sub)
    sub.add_argument("--at", type=float, metavar="T",
                     help="snapshot time (default: last event time)")
    sub.add_argument("--pairs-file", metavar="PATH",
                     help="score these src<TAB>dst pairs instead of the "
                          "snapshot's edges")
    _add_spec_flags(sub)
    sub.set_defaults(func=_cmd_score)

    sub = subs.add_parser("verify",
                          help="closed forms vs. brute-force complement oracle")
    _add_common(sub, output_default=argparse.SUPPRESS)
    sub.add_argument("--at", type=float, metavar="T",
                     help="snapshot time (default: last event time)")
    sub.add_argument("--random-nodes", type=int, metavar="N",
                     help="check a seeded random graph instead of --input")
    sub.add_argument("--density", type=float, default=0.2,
                     help="edge density for --random-nodes (default 0.2)")
    sub.add_argument("--reciprocal", action="store_true",
                     help="make the random graph reciprocal (every edge paired "
                          "with its reverse)")
    sub.add_argument("--pairs", default="edges", choices=["edges", "all"],
                     help="verify existing edges only, or all pairs (default edges)")
    sub.add_argument("--max-pairs", type=int, default=1000,
                     help="sample size for --pairs all on large graphs")
    sub.add_argument("--seed", type=int,
                     help="seed for --random-nodes and pair sampling (default 0)")
    _add_spec_flags(sub, with_model=False)
    sub.add_argument("--model", default="network",
                     choices=["score", "network"], help=argparse.SUPPRESS)
    sub.add_argument("--adad-complement-weights", action="store_true",
                     help="verify the complement-degree adad variant")
    sub.set_defaults(func=_cmd_verify)

    sub = subs.add_parser("evaluate", help="temporal-split decay evaluation")
    _add_common(sub, output_default=None)
    sub.add_argument("--survival-output", metavar="PATH",
                     help="also write a t<TAB>fraction_surviving curve")
    _add_spec_flags(sub)
    _add_eval_flags(sub)
    sub.set_defaults(func=_cmd_evaluate)

    sub = subs.add_parser("evaluate-lp",
                          help="creation-side evaluation (link prediction)")
    _add_common(sub, output_default=None)
    _add_spec_flags(sub, with_model=False)
    _add_eval_flags(sub)
    sub.set_defaults(func=_cmd_evaluate_lp)

    sub = subs.add_parser("survival", help="exponential lifetime fit")
    _add_common(sub, output_default=None)
    sub.set_defaults(func=_cmd_survival)

    sub = subs.add_parser("gen", help="generate a synthetic event stream")
    _add_common(sub)
    sub.add_argument("--id-map", metavar="PATH",
                     help="write the node<TAB>index map here")
    sub.add_argument("--seed", type=int, help="RNG seed (required)")
    sub.add_argument("--n-nodes", type=int, default=1000,
                     help="node count (default 1000)")
    sub.add_argument("--n-add-events", type=int, default=20000,
                     help="number of edge additions (default 20000)")
    sub.add_argument("--attach-exponent", type=float, default=1.0,
                     help="preferential-attachment strength (default 1.0)")
    sub.add_argument("--decay-half-life", type=float, default=23.0,
                     help="edge half-life in ticks (default 23)")
    sub.add_argument("--decay-bias", default="none",
                     choices=["none", "low_degree", "few_common_neighbors"],
                     help="planted decay signal (default none)")
    sub.add_argument("--hazard-multiplier", type=float, default=4.0,
                     help="hazard factor for the biased class (default 4)")
    sub.add_argument("--deletion-share-target", type=float, default=0.27,
                     help="target delete share used to size the window "
                          "(default 0.27)")
    sub.add_argument("--span", type=float,
                     help="simulation window in ticks (default: derived from "
                          "the deletion-share target)")
    sub.set_defaults(func=_cmd_gen)

    sub = subs.add_parser("sweep",
                          help="evaluate all 40 model/measure/combo specs")
    _add_common(sub)
    _add_eval_flags(sub)
    sub.set_defaults(func=_cmd_sweep)

    for sub in subs.choices.values():
        sub.set_defaults(_parser=sub)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if getattr(args, "config", None) is not None:
            _apply_config(args, argv)
        return args.func(args)
    except (EventFormatError, ValueError, OSError, RuntimeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
