"""Command-line entry point: ``zxmultiway <subcommand> ...``.

Exit status: 0 success, 1 a verdict failed (not confluent, not isomorphic,
unsound rule, ...), 2 bad configuration or input, 3 a resource cap was hit.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

import numpy as np

from .multiway import (BranchialGraph, CausalGraph, EngineConfig, MultiwayGraph,
                       ResourceLimitError, RewriteSystem, branchial, causal_graph,
                       check_causal_invariance, check_confluence, complete, evolve)
from .rulial import (ROOT_NOT, MonoidalReport, matrix_power_apply, monoidal_experiment,
                     quantum_toy, sample_tier, weakly_connected, QuantumSystem, PLUS)
from .systems import (FrontendError, SetSystem, StringSystem, TermSystem, TMSystem,
                      check_complete_consistent, load_rules_json, tm_blank, tm_rulial)
from .terms import TermError, parse_term
from .zx.diagram import DiagramError, parse as parse_diagram
from .zx.matching import PatternError
from .zx.phase import PhaseError
from .zx.rules import (RuleError, RuleInstance, enumerate_rules, identity_rule, instantiate,
                       verify_rule_sampled)
from .zx.semantics import diagram_matrix, matrix_to_json, verify_pair
from .zx.system import ZXSystem

OK, FAILED, CONFIG, RESOURCES = 0, 1, 2, 3

SYSTEM_KINDS = ("string", "set", "tm", "zx", "term", "quantum")
CONFIG_ERRORS = (FrontendError, DiagramError, PhaseError, RuleError, PatternError,
                 TermError, ValueError, KeyError, OSError)


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    system: str | None = None
    rules: str | None = None
    rules_file: str | None = None
    init: list = field(default_factory=list)
    steps: int = 0
    mode: str = "evolution"
    workers: int = 1
    max_states: int = 10**6
    max_events: int = 10**7
    extra: dict = field(default_factory=dict)

    def validate(self) -> "RunConfig":
        if self.system is not None and self.system not in SYSTEM_KINDS:
            raise ConfigError(f"unknown system {self.system!r}")
        if self.steps < 0:
            raise ConfigError("steps must be >= 0")
        if self.mode not in ("evolution", "states"):
            raise ConfigError(f"unknown mode {self.mode!r}")
        if self.workers < 1:
            raise ConfigError("workers must be >= 1")
        if self.max_states < 1 or self.max_events < 1:
            raise ConfigError("caps must be positive")
        return self

    def engine(self) -> EngineConfig:
        return EngineConfig(self.max_states, self.max_events, self.workers)

    def to_json(self) -> dict:
        # the worker count never changes results, so it stays out of artifacts
        return {k: v for k, v in sorted(vars(self).items()) if k != "workers"}


# --------------------------------------------------------------- system setup
def zx_rules(spec: str) -> list[RuleInstance]:
    """``enumerate:2x2``, ``identity:Z``, ``S1:X:n1=1,m1=1,n2=1,m2=1,k=1``; ``;``-separated."""
    out: list[RuleInstance] = []
    for tok in filter(None, (t.strip() for t in spec.split(";"))):
        head, *rest = tok.split(":")
        if head == "enumerate":
            bound = rest[0] if rest else "2x2"
            mi, mo = (int(x) for x in bound.lower().split("x"))
            out.extend(enumerate_rules(mi, mo))
        elif head == "identity":
            out.append(identity_rule(rest[0] if rest else "Z"))
        else:
            color = rest[0] if rest else "Z"
            params = {}
            if len(rest) > 1 and rest[1]:
                for kv in rest[1].split(","):
                    k, v = kv.split("=")
                    params[k.strip()] = v.strip() in ("1", "true") if k.strip() == "phase_on_state" else int(v)
            out.append(instantiate(head, color, **params))
    if not out:
        raise ConfigError("no ZX rules given")
    return out


def build_system(cfg: RunConfig) -> tuple[RewriteSystem, list]:
    kind = cfg.system
    if kind is None:
        raise ConfigError("--system is required")
    if cfg.rules_file:
        with open(cfg.rules_file) as fh:
            text = fh.read()
        if kind == "zx":
            system: RewriteSystem = ZXSystem([RuleInstance.from_json(r) for r in json.loads(text)])
        else:
            system = load_rules_json(text)
            if system.kind != kind:
                raise ConfigError(f"rule file is for {system.kind!r}, not {kind!r}")
    elif cfg.rules is None and kind not in ("tm", "quantum"):
        raise ConfigError("--rules or --rules-file is required")
    elif kind == "string":
        system = StringSystem.parse(cfg.rules)
    elif kind == "set":
        system = SetSystem.parse(cfg.rules)
    elif kind == "term":
        system = TermSystem([r for r in cfg.rules.split(";") if r.strip()])
    elif kind == "zx":
        system = ZXSystem(zx_rules(cfg.rules))
    elif kind == "tm":
        s, c = (int(x) for x in (cfg.rules or "2x2").lower().split("x"))
        system = tm_rulial(s, c)
    else:
        if (cfg.rules or "root-not") != "root-not":
            raise ConfigError("the quantum system only knows the root-not gate")
        system = QuantumSystem(ROOT_NOT)
    if not cfg.init:
        raise ConfigError("--init is required")
    return system, [parse_init(kind, text) for text in cfg.init]


def parse_init(kind: str, text: str):
    if kind == "string":
        return text
    if kind == "set":
        return SetSystem.parse_state(text)
    if kind == "term":
        return parse_term(text)
    if kind == "zx":
        return parse_diagram(text)
    if kind == "tm":
        if text != "blank":
            raise ConfigError("tm init must be 'blank'")
        return tm_blank()
    if text not in ("0", "1"):
        raise ConfigError("quantum init must be 0 or 1")
    return text


# ------------------------------------------------------------------- outputs
def write(path: str | None, text: str) -> None:
    if path is None:
        return
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w") as fh:
        fh.write(text)


def emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, indent=1, sort_keys=True) + "\n")


def load_artifact(text: str):
    """Read back any JSON artifact written by this tool."""
    data = json.loads(text)
    kind = data.get("artifact") if isinstance(data, dict) else None
    if kind == "multiway":
        return MultiwayGraph.from_json(json.dumps(data["graph"]))
    if kind == "causal":
        return CausalGraph.from_json(json.dumps(data["graph"]))
    if kind == "branchial":
        return BranchialGraph.from_json(json.dumps(data["graph"]))
    if kind == "matrix":
        return np.array([[complex(re, im) for re, im in row] for row in data["matrix"]])
    if kind == "rules":
        return [RuleInstance.from_json(r) for r in data["rules"]]
    if kind == "monoidal":
        return [MonoidalReport.from_json(r) for r in data["instances"]]
    if kind == "quantum":
        return [[complex(re, im) for re, im in vec] for vec in data["amplitudes"]]
    raise ConfigError(f"not an artifact: {kind!r}")


def artifact(kind: str, cfg: RunConfig, **payload) -> str:
    body = {"artifact": kind, "config": cfg.to_json(), **payload}
    return json.dumps(body, indent=1, sort_keys=True) + "\n"


# ---------------------------------------------------------------- commands
def cmd_evolve(args, cfg: RunConfig) -> int:
    system, init = build_system(cfg)
    mw = evolve(system, init, cfg.steps, cfg.mode, cfg.engine())
    write(args.dot, mw.to_dot())
    write(args.json, artifact("multiway", cfg, graph=json.loads(mw.to_json())))
    emit({"states": len(mw.states), "events": len(mw.events),
          "components": weakly_connected(mw), "generations": mw.max_generation})
    return OK


def cmd_causal(args, cfg: RunConfig) -> int:
    system, init = build_system(cfg)
    mw = evolve(system, init, cfg.steps, cfg.mode, cfg.engine())
    cg = causal_graph(mw, reduce=args.reduce)
    rules = {e.id: e.rule for e in mw.events}
    write(args.dot, cg.to_dot(rules=rules))
    write(args.json, artifact("causal", cfg, graph=json.loads(cg.to_json())))
    emit({"events": len(cg.vertices), "edges": len(cg.edges), "acyclic": cg.is_acyclic()})
    return OK if cg.is_acyclic() else FAILED


def cmd_branchial(args, cfg: RunConfig) -> int:
    system, init = build_system(cfg)
    mw = evolve(system, init, cfg.steps, cfg.mode, cfg.engine())
    t = cfg.steps if args.slice is None else args.slice
    window = None if args.window == 0 else args.window
    bg = branchial(mw, t, window)
    write(args.dot, bg.to_dot(mw))
    write(args.json, artifact("branchial", cfg, graph=json.loads(bg.to_json())))
    emit({"slice": t, "states": len(bg.vertices), "edges": len(bg.edges),
          "connected": bg.is_connected()})
    return OK


def cmd_semantics(args, cfg: RunConfig) -> int:
    d = parse_diagram(args.zx)
    exact = None if args.exact == "auto" else args.exact == "exact"
    m = diagram_matrix(d, exact=exact, schedule=args.schedule)
    out = {"shape": list(m.shape), "matrix": matrix_to_json(m)}
    rc = OK
    if args.against:
        v = verify_pair(d, parse_diagram(args.against), tol=args.tol, exact=exact)
        out["verdict"] = v.kind
        out["lambda"] = None if v.lam is None else [float(complex(v.lam).real), float(complex(v.lam).imag)]
        rc = OK if v.kind == "equal" else FAILED
    write(args.json, artifact("matrix", cfg, **out))
    emit(out)
    return rc


def cmd_rules(args, cfg: RunConfig) -> int:
    rules = enumerate_rules(args.max_in, args.max_out)
    write(args.json, artifact("rules", cfg, rules=[r.to_json() for r in rules]))
    bad = 0
    for r in rules:
        line = f"{r.id}\t{r.lhs.canonical_key()}\t=\t{r.rhs.canonical_key()}"
        if args.verify:
            kinds = sorted({v.kind for _, v in verify_rule_sampled(r, args.tol)})
            ok = kinds == [r.expected]
            bad += not ok
            line += "\t" + ",".join(kinds)
        sys.stdout.write(line + "\n")
    sys.stdout.write(f"# {len(rules)} rules" + (f", {bad} failed" if args.verify else "") + "\n")
    return FAILED if bad else OK


def cmd_experiment(args, cfg: RunConfig) -> int:
    tier = sample_tier(args.tier, args.sample, args.seed) if args.sample else sample_tier(args.tier, 10**9)
    reports = [monoidal_experiment(d, steps=cfg.steps, config=cfg.engine()) for d in tier]
    passed = sum(r.passed for r in reports)
    summary = {"tier": args.tier, "instances": len(reports), "passed": passed,
               "raw_isomorphic": sum(r.raw_isomorphic for r in reports)}
    write(args.json, artifact("monoidal", cfg, summary=summary,
                              instances=[r.to_json() for r in reports]))
    emit(summary)
    return OK if passed == len(reports) else FAILED


def cmd_quantum(args, cfg: RunConfig) -> int:
    run = quantum_toy(ROOT_NOT, PLUS, cfg.steps)
    faithful = all(run.amplitudes[t] == matrix_power_apply(ROOT_NOT, PLUS, t)
                   for t in range(cfg.steps + 1))
    amps = [[[float(complex(a).real), float(complex(a).imag)] for a in vec] for vec in run.amplitudes]
    write(args.dot, run.graph.to_dot())
    write(args.json, artifact("quantum", cfg, amplitudes=amps, faithful=faithful))
    emit({"steps": cfg.steps, "faithful": faithful,
          "amplitudes": [[str(a) for a in vec] for vec in run.amplitudes]})
    return OK if faithful else FAILED


def cmd_complete(args, cfg: RunConfig) -> int:
    from .multiway import CompletedSystem
    system, init = build_system(cfg)
    extra = complete(system, init, args.depth, args.orientation, args.max_rounds)
    before = weakly_connected(evolve(system, init, cfg.steps, "states", cfg.engine()))
    done = CompletedSystem(system, extra)
    after = weakly_connected(evolve(done, init, cfg.steps, "states", cfg.engine()))
    emit({"rules": [[system.canonical(a), system.canonical(b)] for a, b in extra],
          "components_before": before, "components_after": after})
    return OK


def cmd_check(args, cfg: RunConfig) -> int:
    system, init = build_system(cfg)
    if args.property == "confluence":
        rep = check_confluence(system, init, cfg.steps, args.join_depth, cfg.engine())
        emit({"verdict": rep.verdict, "pairs": rep.pairs_checked,
              "unjoined": [list(u) for u in rep.unjoined], "max_join_distance": rep.max_join_distance})
        verdict = rep.verdict
        good = "confluent"
    elif args.property == "invariance":
        if len(init) != 1:
            raise ConfigError("causal invariance takes a single init")
        rep = check_causal_invariance(system, init[0], cfg.steps, args.max_paths)
        emit({"verdict": rep.verdict, "paths": rep.paths, "classes": rep.classes})
        verdict = rep.verdict
        good = "invariant"
    else:
        if not isinstance(system, StringSystem) or len(init) != 1:
            raise ConfigError("consistency needs a string system and one init")
        rep = check_complete_consistent(system, init[0], cfg.steps, args.max_len)
        emit({"consistent": rep.consistent, "complete": rep.complete,
              "both": sorted(rep.both), "neither": sorted(rep.neither)})
        verdict = "ok" if rep.consistent else "inconsistent"
        good = "ok"
    if verdict == "inconclusive":
        return RESOURCES
    return OK if verdict == good else FAILED


# ------------------------------------------------------------------ parser
def _system_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--system", choices=SYSTEM_KINDS)
    p.add_argument("--rules", help="inline rules (format depends on --system)")
    p.add_argument("--rules-file", help="JSON rule file")
    p.add_argument("--init", action="append", default=[], help="initial state (repeatable)")
    p.add_argument("--mode", choices=("evolution", "states"), default="evolution")


def _common(p: argparse.ArgumentParser, steps: int = 2) -> None:
    p.add_argument("--steps", type=int, default=steps)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--max-states", type=int, default=10**6)
    p.add_argument("--max-events", type=int, default=10**7)
    p.add_argument("--json", help="write the JSON artifact here ('-' for stdout)")
    p.add_argument("--dot", help="write DOT here ('-' for stdout)")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="zxmultiway")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("evolve", help="multiway evolution / states graph")
    _system_args(p)
    _common(p)
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("causal", help="causal graph of a multiway evolution")
    _system_args(p)
    _common(p)
    p.add_argument("--reduce", action="store_true", help="transitive reduction")
    p.set_defaults(func=cmd_causal)

    p = sub.add_parser("branchial", help="branchial graph of one slice")
    _system_args(p)
    _common(p)
    p.add_argument("--slice", type=int)
    p.add_argument("--window", type=int, default=1, help="ancestor window in slices (0: any)")
    p.set_defaults(func=cmd_branchial)

    p = sub.add_parser("semantics", help="linear map of a ZX-diagram")
    p.add_argument("--zx", required=True)
    p.add_argument("--against", help="second diagram to compare with")
    p.add_argument("--exact", choices=("auto", "exact", "float"), default="auto")
    p.add_argument("--schedule", choices=("greedy", "sequential"), default="greedy")
    p.add_argument("--tol", type=float, default=1e-9)
    p.add_argument("--json")
    p.set_defaults(func=cmd_semantics, steps=0, workers=1, max_states=10**6, max_events=10**7)

    p = sub.add_parser("rules", help="ZX rule instances")
    rs = p.add_subparsers(dest="action", required=True)
    e = rs.add_parser("enumerate")
    e.add_argument("--max-in", type=int, default=2)
    e.add_argument("--max-out", type=int, default=2)
    e.add_argument("--verify", action="store_true", help="check every instance semantically")
    e.add_argument("--tol", type=float, default=1e-9)
    e.add_argument("--json")
    e.set_defaults(func=cmd_rules, steps=0, workers=1, max_states=10**6, max_events=10**7)

    p = sub.add_parser("experiment", help="rulial vs monoidal comparison")
    es = p.add_subparsers(dest="action", required=True)
    e = es.add_parser("monoidal")
    e.add_argument("--tier", type=int, default=1)
    e.add_argument("--sample", type=int, default=0, help="0: the whole tier")
    e.add_argument("--seed", type=int, default=0)
    _common(e)
    e.set_defaults(func=cmd_experiment)

    p = sub.add_parser("quantum", help="quantum toy multiway system")
    qs = p.add_subparsers(dest="action", required=True)
    q = qs.add_parser("root-not")
    _common(q, steps=8)
    q.set_defaults(func=cmd_quantum)

    p = sub.add_parser("complete", help="bounded completion")
    _system_args(p)
    _common(p)
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--orientation", choices=("both", "order"), default="both")
    p.add_argument("--max-rounds", type=int, default=50)
    p.set_defaults(func=cmd_complete)

    p = sub.add_parser("check", help="confluence, causal invariance or consistency")
    p.add_argument("property", choices=("confluence", "invariance", "consistency"))
    _system_args(p)
    _common(p)
    p.add_argument("--join-depth", type=int)
    p.add_argument("--max-paths", type=int, default=5000)
    p.add_argument("--max-len", type=int, default=4)
    p.set_defaults(func=cmd_check)
    return ap


def config_from_args(args) -> RunConfig:
    extra = {k: v for k, v in sorted(vars(args).items())
             if k not in ("func", "command", "system", "rules", "rules_file", "init", "steps",
                          "mode", "workers", "max_states", "max_events", "json", "dot")}
    return RunConfig(args.command, getattr(args, "system", None), getattr(args, "rules", None),
                     getattr(args, "rules_file", None), list(getattr(args, "init", [])),
                     args.steps, getattr(args, "mode", "evolution"), args.workers,
                     args.max_states, args.max_events, extra).validate()


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    for name in ("json", "dot"):
        if not hasattr(args, name):
            setattr(args, name, None)
    try:
        cfg = config_from_args(args)
        return args.func(args, cfg)
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return RESOURCES
    except CONFIG_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return CONFIG


if __name__ == "__main__":
    sys.exit(main())
