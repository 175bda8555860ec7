"""Seeded desk-scale experiments: codes, syndrome objects, gap and CA statistics, records.

Every record is a pure function of (config, master seed, trial index); the
per-trial seed is derive_seed(seed, "trial", index).  Records never carry
wall time, so reruns are byte-identical apart from the timestamp header.
"""
import csv
import io
import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from datetime import datetime, timezone
from fractions import Fraction
from math import comb

import numpy as np

from . import linalg
from .adversarial import build_no_slack_pair, certify_violation, find_code_with_distance
from .agreement import ca_decide, gap_check_space
from .ball import build_ball_sets
from .codes import DEFAULT_CAP, INF, sample_code, syndrome_keys
from .errors import BudgetExceeded, ConfigError, NotFound
from .field import field_make
from .geometry import (
    AffineObject,
    canonical_line,
    curve_rows,
    line_count_closed_form,
    line_points,
    syndrome_line_table,
)
from .hamming import ball_volume
from .rng import derive_seed, make_rng
from .witness import degeneracy_threshold, threshold_check, witness_from_ball

MODES = ("line-gap", "space-gap", "space-ca", "curve-ca", "no-slack-demo", "reduce-demo", "selftest")
CONFIG_ENV = "SYNDGAP_CONFIG"

COLUMNS = (
    "trial_index",
    "code_seed",
    "q",
    "n",
    "r",
    "d",
    "object_kind",
    "object_id",
    "count_in_ball",
    "total_points",
    "contained_bigball",
    "ca_decision",
    "planner_threshold",
    "verdict",
)


@dataclass
class ExperimentConfig:
    mode: str = "line-gap"
    q: int = 4
    n: int = 8
    r: int = 4
    R: str = ""  # rate; when set, r = n - floor(R n)
    E: int = 1
    Eplus: int = -1  # -1 means E+ = E
    degree: int = 1  # m for spaces, l for curves
    trials: int = 20
    seed: int = 0
    enumeration: str = "full"  # full | sampled
    samples: int = 1000
    budget: int = int(DEFAULT_CAP)
    out: str = ""
    format: str = "csv"
    jobs: int = 1
    attach_no_slack: bool = False
    K: int = 0  # no-slack K; 0 means min(E+1, q-1)
    plan_threshold: str = ""  # count (lines) or ratio (spaces) above which an uncontained object is a violation
    level: str = "quick"

    def __post_init__(self):
        self.normalize()

    def normalize(self):
        if self.R:
            rate = Fraction(self.R)
            self.r = self.n - (rate * self.n).numerator // (rate * self.n).denominator
        if self.Eplus < 0:
            self.Eplus = self.E

    @property
    def kind(self):
        return {"line-gap": "line", "space-gap": "space", "space-ca": "space", "curve-ca": "curve"}.get(self.mode)

    def threshold(self):
        return Fraction(self.plan_threshold) if self.plan_threshold else None


ALIASES = {"m": "degree", "ell": "degree", "l": "degree", "masterSeed": "seed", "master_seed": "seed", "e_plus": "Eplus"}


def _coerce(name, value):
    types = {f.name: f.type for f in fields(ExperimentConfig)}
    if name not in types:
        raise ConfigError(f"unknown config key {name!r}")
    t = types[name]
    if t in (int, "int"):
        try:
            return int(value)
        except ValueError:
            raise ConfigError(f"{name} must be an integer, got {value!r}") from None
    if t in (bool, "bool"):
        if isinstance(value, bool):
            return value
        if str(value).lower() in ("1", "true", "yes", "on"):
            return True
        if str(value).lower() in ("0", "false", "no", "off"):
            return False
        raise ConfigError(f"{name} must be a boolean, got {value!r}")
    return str(value)


def parse_config_text(text):
    """Flat key=value lines; '#' starts a comment."""
    out = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"line {lineno}: expected key=value")
        key, value = (s.strip() for s in line.split("=", 1))
        key = ALIASES.get(key, key)
        out[key] = _coerce(key, value)
    return out


def load_config(path=None, overrides=None, env=None):
    """Defaults < config file < overrides.  The file path is path, else $SYNDGAP_CONFIG."""
    env = os.environ if env is None else env
    path = path or env.get(CONFIG_ENV)
    values = {}
    if path:
        try:
            with open(path) as fh:
                values.update(parse_config_text(fh.read()))
        except OSError as e:
            raise ConfigError(f"cannot read config {path}: {e}") from None
    for k, v in (overrides or {}).items():
        if v is not None:
            k = ALIASES.get(k, k)
            values[k] = _coerce(k, v)
    return ExperimentConfig(**values)


def estimate_cost(cfg):
    """Rough operation count of one trial, used for up-front rejection."""
    q, n, r, E = cfg.q, cfg.n, cfg.r, cfg.E
    if cfg.mode == "reduce-demo":
        return 0  # no ball enumeration; the distance computation checks its own budget
    ball = ball_volume(n, q, max(E, cfg.Eplus))
    if cfg.mode == "line-gap":
        if cfg.enumeration == "full":
            return ball + line_count_closed_form(q, r) * q
        members = min(ball_volume(n, q, E), q**r)  # sampled lines pass through two members of H_E
        return ball + (comb(members, 2) + cfg.samples) * q
    if cfg.mode in ("space-gap", "space-ca", "curve-ca"):
        pts = q**cfg.degree if cfg.kind == "space" else q
        per = pts + (sum(comb(n, i) for i in range(cfg.Eplus + 1)) if cfg.mode != "space-gap" else 0)
        return ball + cfg.samples * per
    return ball


def validate(cfg):
    if cfg.mode not in MODES:
        raise ConfigError(f"unknown mode {cfg.mode!r}")
    if cfg.format not in ("csv", "json"):
        raise ConfigError("format must be csv or json")
    if cfg.enumeration not in ("full", "sampled"):
        raise ConfigError("enumeration must be full or sampled")
    if cfg.mode in ("selftest",):
        return
    field_make(cfg.q)  # raises on a non prime power
    if not 1 <= cfg.r <= cfg.n:
        raise ConfigError("need 1 <= r <= n")
    if not 0 <= cfg.E <= cfg.Eplus <= cfg.n:
        raise ConfigError("need 0 <= E <= E+ <= n")
    if cfg.trials < 0 or cfg.samples < 0 or cfg.jobs < 1:
        raise ConfigError("trials and samples must be >= 0, jobs >= 1")
    if cfg.degree < 1:
        raise ConfigError("degree must be >= 1")
    if cfg.mode == "curve-ca" and cfg.degree >= cfg.q:
        raise ConfigError("curve degree must be below q")
    cost = estimate_cost(cfg)
    if cost > cfg.budget:
        raise BudgetExceeded(cost, cfg.budget, f"{cfg.mode} trial")


# records


def _record(cfg, i, seed, d, kind, oid, count, total, contained, ca, thr, verdict):
    return {
        "trial_index": i,
        "code_seed": seed,
        "q": cfg.q,
        "n": cfg.n,
        "r": cfg.r,
        "d": str(d),
        "object_kind": kind,
        "object_id": oid,
        "count_in_ball": int(count),
        "total_points": int(total),
        "contained_bigball": bool(contained),
        "ca_decision": "" if ca is None else bool(ca),
        "planner_threshold": "" if thr is None else str(thr),
        "verdict": verdict,
    }


def _trial_code(cfg, i):
    seed = derive_seed(cfg.seed, "trial", i)
    C = sample_code(cfg.n, cfg.r, field_make(cfg.q), seed)
    return seed, C, C.min_distance(cfg.budget)


def _key_id(prefix, q, rows):
    return prefix + ":".join(str(int(k)) for k in syndrome_keys(q, np.atleast_2d(rows)))


# line gap


def _line_trial(cfg, i):
    F = field_make(cfg.q)
    q = cfg.q
    seed, C, d = _trial_code(cfg, i)
    balls = build_ball_sets(C, {cfg.E, cfg.Eplus}, cfg.budget)
    thr = cfg.threshold()
    if cfg.enumeration == "full":
        S0, S1 = syndrome_line_table(cfg.r, F, budget=cfg.budget)
    else:
        rng = make_rng(seed, "lines")
        A0, A1 = syndrome_line_table(cfg.r, F, filter_points=balls[cfg.E].members(), budget=cfg.budget)
        extra = []
        for _ in range(cfg.samples):
            s1 = F.random(cfg.r, rng)
            if not s1.any():
                continue
            L = canonical_line(F, F.random(cfg.r, rng), s1)
            extra.append((L.s0, L.s1))
        if extra:
            A0 = np.vstack([A0] + [e[0][None] for e in extra])
            A1 = np.vstack([A1] + [e[1][None] for e in extra])
        k = np.unique(np.stack([syndrome_keys(q, A0), syndrome_keys(q, A1)], axis=1), axis=0, return_index=True)[1]
        S0, S1 = A0[np.sort(k)], A1[np.sort(k)]
    keys = syndrome_keys(q, line_points(F, S0, S1)) if len(S0) else np.zeros((0, q), dtype=np.int64)
    counts = balls[cfg.E].contains_keys(keys).sum(axis=1) if len(S0) else np.zeros(0, dtype=np.int64)
    contained = balls[cfg.Eplus].contains_keys(keys).all(axis=1) if len(S0) else np.zeros(0, dtype=bool)
    records = []
    for j in np.flatnonzero(counts >= 2):
        verdict = "contained" if contained[j] else ("violation" if thr is not None and counts[j] > thr else "ok")
        oid = _key_id("L", q, np.vstack([S0[j], S1[j]]))
        records.append(_record(cfg, i, seed, d, "line", oid, counts[j], q, contained[j], None, thr, verdict))
    bad = counts[~contained]
    summary = {
        "trial_index": i,
        "d": str(d),
        "lines": int(len(S0)),
        "ball_size": len(balls[cfg.E]),
        "max_bad_count": int(bad.max()) if bad.size else 0,
        "histogram": np.bincount(counts, minlength=q + 1).tolist() if len(counts) else [0] * (q + 1),
        "violations": int(sum(r["verdict"] == "violation" for r in records)),
    }
    if cfg.attach_no_slack:
        rec, info = _attached_no_slack(cfg, i, seed, C, d, balls)
        records.append(rec)
        summary["no_slack"] = info
    return records, summary


def _attached_no_slack(cfg, i, seed, C, d, balls):
    """The explicit pair's syndrome line on this code, containment judged at E+ = E."""
    F = C.F
    E = cfg.E
    K = cfg.K or min(E + 1, cfg.q - 1)
    inst = build_no_slack_pair(F, cfg.n, E, K, range(K), "permutation", derive_seed(seed, "no-slack"))
    s0, s1 = C.syndrome(inst.x1), C.syndrome(inst.x2)
    keys = syndrome_keys(cfg.q, line_points(F, s0[None], s1[None]))[0]
    count = int(balls[E].contains_keys(keys).sum())
    contained = bool(balls[E].contains_keys(keys).all())
    far = d is INF or d >= 2 * E + 2
    verdict = "no-slack" if (count >= K and not contained) else ("no-slack-small-d" if not far else "no-slack-failed")
    oid = _key_id("N", cfg.q, np.vstack([s0, s1]))
    rec = _record(cfg, i, seed, d, "no-slack-line", oid, count, cfg.q, contained, None, Fraction(K - 1, 1), verdict)
    return rec, {"K": K, "count": count, "contained_at_E": contained, "distance_ok": far}


# spaces and curves


def _canonical_space(F, base, dirs):
    """(base, directions) with directions in RREF and base the smallest-key point of the coset."""
    R, piv = linalg.rref(F, dirs)
    B = R[: len(piv)]
    m = len(piv)
    coeff = np.array(np.meshgrid(*([F.elements()] * m), indexing="ij")).reshape(m, -1).T
    pts = F.add(base[None, :], F.matmul(coeff, B))
    return pts[int(np.argmin(syndrome_keys(F.q, pts)))], B


def _sample_objects(cfg, C, ball, rng):
    """Distinct sampled targets; half are forced through members of H_E."""
    F = C.F
    q, r, deg = cfg.q, cfg.r, cfg.degree
    members = ball.members()
    seen = {}
    for s in range(cfg.samples):
        through = s % 2 == 0 and len(members) > deg
        if cfg.kind == "space":
            if through:
                pick = members[rng.choice(len(members), size=deg + 1, replace=False)]
                base, dirs = pick[0], F.sub(pick[1:], pick[0][None, :])
            else:
                base, dirs = F.random(r, rng), F.random((deg, r), rng)
            if linalg.rank(F, dirs) != deg:
                continue
            base, dirs = _canonical_space(F, base, dirs)
            coeffs = np.vstack([base, dirs])
            oid = _key_id("S", q, coeffs)
        else:
            if through:
                alphas = rng.choice(q, size=deg + 1, replace=False)
                pick = members[rng.choice(len(members), size=deg + 1, replace=True)]
                V = curve_rows(F, alphas, deg).T  # row j = powers of alpha_j
                coeffs = np.vstack([linalg.solve_linear(F, V, pick[:, c]) for c in range(r)]).T
            else:
                coeffs = F.random((deg + 1, r), rng)
            oid = _key_id("C", q, coeffs)
        seen.setdefault(oid, coeffs)
    return sorted(seen.items())


def _space_trial(cfg, i):
    F = field_make(cfg.q)
    seed, C, d = _trial_code(cfg, i)
    balls = build_ball_sets(C, {cfg.E, cfg.Eplus}, cfg.budget)
    rng = make_rng(seed, "objects")
    thr = cfg.threshold()
    ca_mode = cfg.mode.endswith("-ca")
    records, ranks = [], []
    verdicts = {}
    for oid, coeffs in _sample_objects(cfg, C, balls[cfg.E], rng):
        obj = AffineObject(F, cfg.kind, coeffs)
        rep = gap_check_space(C, obj, cfg.E, cfg.Eplus, balls, None, cfg.budget, oid)
        if not ca_mode:
            verdict = "contained" if rep.contained else ("violation" if thr is not None and rep.ratio > thr else "ok")
            records.append(
                _record(cfg, i, seed, d, cfg.kind, oid, rep.count, rep.total, rep.contained, None, thr, verdict)
            )
            verdicts[verdict] = verdicts.get(verdict, 0) + 1
            continue
        ca = ca_decide(C, coeffs, cfg.Eplus, cfg.budget).decision
        verdict = "ca" if ca else "no-ca"
        if not ca and rep.eval_count > degeneracy_threshold(cfg.kind, cfg.degree, cfg.q):
            pts = obj.points()
            inside = balls[cfg.E].contains(obj.evaluate(pts))
            W = witness_from_ball(C, obj, pts[inside], balls[cfg.E], cfg.E)
            v = threshold_check(C, W, cfg.Eplus, True, d)
            if not v.applicable:
                verdict = "not-applicable"
            else:
                ranks.append(v.t - v.h)
                verdict = "certified" if v.holds else ("floor-only" if v.holds_unfloored else "counterexample")
        verdicts[verdict] = verdicts.get(verdict, 0) + 1
        records.append(
            _record(cfg, i, seed, d, cfg.kind, oid, rep.count, rep.total, rep.contained, ca, thr, verdict)
        )
    summary = {
        "trial_index": i,
        "d": str(d),
        "objects": len(records),
        "verdicts": dict(sorted(verdicts.items())),
        "witness_rank_excess": np.bincount(ranks).tolist() if ranks else [],
        "max_ratio_no_ca": max(
            (str(Fraction(r["count_in_ball"], r["total_points"])) for r in records if r["ca_decision"] is False),
            key=Fraction,
            default="0",
        ),
    }
    return records, summary


def _run_trial(args):
    cfg, i = args
    if cfg.mode == "line-gap":
        return _line_trial(cfg, i)
    return _space_trial(cfg, i)


def run_experiment(cfg):
    """(records, summary) for the gap/CA modes; records sorted by (trial_index, object_id)."""
    validate(cfg)
    t0 = time.perf_counter()
    tasks = [(cfg, i) for i in range(cfg.trials)]
    if cfg.jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=cfg.jobs) as pool:
            results = list(pool.map(_run_trial, tasks))
    else:
        results = [_run_trial(t) for t in tasks]
    records = sorted((r for recs, _ in results for r in recs), key=lambda r: (r["trial_index"], r["object_id"]))
    per_trial = sorted((s for _, s in results), key=lambda s: s["trial_index"])
    summary = {"mode": cfg.mode, "config": asdict(cfg), "trials": per_trial, "records": len(records)}
    if cfg.mode == "line-gap":
        summary["max_bad_count"] = max((s["max_bad_count"] for s in per_trial), default=0)
        summary["violations"] = sum(s["violations"] for s in per_trial)
    else:
        total = {}
        for s in per_trial:
            for k, v in s["verdicts"].items():
                total[k] = total.get(k, 0) + v
        summary["verdicts"] = dict(sorted(total.items()))
        summary["violations"] = total.get("violation", 0) + total.get("counterexample", 0)
        # witnesses beating the floored constant but not the unfloored one; see adversarial.floor_counterexample
        summary["floor_only"] = total.get("floor-only", 0)
    summary["wall_time_s"] = round(time.perf_counter() - t0, 3)
    return records, summary


def run_line_gap(cfg):
    cfg.mode = "line-gap"
    return run_experiment(cfg)


def run_ca(cfg):
    if cfg.mode not in ("space-ca", "curve-ca"):
        raise ConfigError("run_ca needs mode space-ca or curve-ca")
    return run_experiment(cfg)


# demos


def no_slack_demo(cfg):
    """Find a code with d >= 2E+2 and certify the no-slack line on it."""
    validate(cfg)
    F = field_make(cfg.q)
    E = cfg.E
    K = cfg.K or min(E + 1, cfg.q - 1)
    try:
        C = find_code_with_distance(cfg.n, cfg.r, F, 2 * E + 2, max(cfg.trials, 1) * 10, cfg.seed, cfg.budget)
    except NotFound as e:
        return {"found": False, "best_distance": str(e.best)}
    inst = build_no_slack_pair(F, cfg.n, E, K, range(K), "permutation", derive_seed(cfg.seed, "no-slack"))
    cert = certify_violation(C, inst, budget=cfg.budget)
    return {"found": True, "certificate": cert}


def reduce_demo(cfg):
    """Synthesize a witness of excess rank and reduce it to the base parametrization."""
    from .witness import reduce_to_base, synth_witness

    validate(cfg)
    F = field_make(cfg.q)
    kind = cfg.kind or "line"
    deg = 1 if kind == "line" else cfg.degree
    C = sample_code(cfg.n, cfg.r, F, derive_seed(cfg.seed, "reduce"))
    d = C.min_distance(cfg.budget)
    K = cfg.K or (min(cfg.q**deg, 2 * cfg.q + 4) if kind == "space" else cfg.q)
    W = synth_witness(kind, C, deg + 2, K, cfg.E, derive_seed(cfg.seed, "witness"), degree=deg)
    base = reduce_to_base(C, W, d)
    return {
        "code": C.to_json(),
        "d": str(d),
        "witness": W.to_json(),
        "chain": [c.to_json() for c in base.chain],
        "retained": list(base.retained),
        "coefficients": base.coefficients.tolist(),
    }


# output


def records_to_csv(records, stamp=None):
    buf = io.StringIO()
    buf.write(f"# generated {stamp or datetime.now(timezone.utc).isoformat()}\n")
    w = csv.DictWriter(buf, fieldnames=COLUMNS, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
    w.writeheader()
    for r in records:
        w.writerow(r)
    return buf.getvalue()


def records_to_json(records, stamp=None):
    return json.dumps({"generated": stamp or datetime.now(timezone.utc).isoformat(), "records": records}, indent=1)


def write_output(records, summary, cfg):
    text = records_to_csv(records) if cfg.format == "csv" else records_to_json(records)
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
        with open(cfg.out + ".summary.json", "w") as fh:
            json.dump(summary, fh, indent=1, default=str)
    return text


def strip_timestamp(text):
    """Output with the timestamp removed, for byte comparison."""
    if text.startswith("# generated"):
        return text.split("\n", 1)[1]
    data = json.loads(text)
    data.pop("generated", None)
    return json.dumps(data, indent=1)
