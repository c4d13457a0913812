"""Report records, canonical JSON/CSV forms, and the advisory Aut cache.

Reports are a public contract: records are sorted by canonical partition
string, contain no timestamps, and serialize byte-identically across runs
and worker counts.  Timing lives in a sidecar file next to the report.
"""

from __future__ import annotations

import csv
import hashlib
import json
import os
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .affine import SlopePartition
from .autsearch import DEFAULT_NODE_CAP, AutGroup, automorphism_group
from .classify import ClassificationResult, _Analyzer, verify_witness
from .errors import UnclassifiableSchurian
from .permgroup import StabilizerChain, is_permutation
from .scheme import Scheme, scheme_digest

SCHEMA_VERSION = 1
CACHE_ENV = "AFS_CACHE"
DEFAULT_CACHE_DIR = ".afs-cache"

CSV_COLUMNS = (
    "p", "partition_rgs", "rank", "valencies", "lambda", "primitive",
    "pseudocyclic", "schurian", "aut_order", "verdict", "witness", "error",
)


@dataclass(frozen=True)
class ReportRecord:
    """One classified fusion; round-trips bit-exactly through the JSON form."""

    p: int
    partition_rgs: str
    rank: int
    valencies: tuple[int, ...]      # sorted, nonzero colors only
    lambda_set: tuple[int, ...]     # sorted
    primitive: bool | None
    pseudocyclic: bool | None
    schurian: bool | None
    aut_order: int | None
    verdict: str
    witness: dict
    error: str | None
    elapsed_ms: float               # not serialized; totals go to the sidecar


def _witness_jsonable(res: ClassificationResult) -> dict:
    w = dict(res.witness)
    if res.inner is not None:
        w["inner"] = {
            "verdict": res.inner.verdict,
            "witness": _witness_jsonable(res.inner),
        }
    return w


def record_from_result(p: int, P: SlopePartition, res, elapsed_ms: float) -> ReportRecord:
    """Build a record from a ClassificationResult or an error string."""
    sizes = P.block_sizes()
    valencies = tuple(sorted(b * (p - 1) for b in sizes))
    lam = tuple(sorted(set(sizes)))
    if isinstance(res, str):
        return ReportRecord(
            p, P.as_string(), P.num_blocks + 1, valencies, lam,
            None, None, None, None, "UnclassifiableSchurian", {}, res, elapsed_ms,
        )
    return ReportRecord(
        p, P.as_string(), P.num_blocks + 1, valencies, lam,
        res.primitive, res.pseudocyclic, res.schurian, res.aut_order,
        res.verdict, _witness_jsonable(res), None, elapsed_ms,
    )


def record_to_dict(rec: ReportRecord) -> dict:
    return {
        "p": rec.p,
        "partition_rgs": rec.partition_rgs,
        "rank": rec.rank,
        "valencies": list(rec.valencies),
        "lambda": list(rec.lambda_set),
        "primitive": rec.primitive,
        "pseudocyclic": rec.pseudocyclic,
        "schurian": rec.schurian if rec.schurian is not None else "unknown",
        "aut_order": rec.aut_order,
        "verdict": rec.verdict,
        "witness": rec.witness,
        "error": rec.error,
    }


def record_from_dict(d: dict) -> ReportRecord:
    schurian = d["schurian"]
    if schurian == "unknown":
        schurian = None
    return ReportRecord(
        d["p"], d["partition_rgs"], d["rank"], tuple(d["valencies"]),
        tuple(d["lambda"]), d["primitive"], d["pseudocyclic"], schurian,
        d["aut_order"], d["verdict"], d["witness"], d["error"], 0.0,
    )


def summary_of(records: list[ReportRecord]) -> dict:
    counts: dict[str, int] = {}
    failures = []
    for rec in records:
        counts[rec.verdict] = counts.get(rec.verdict, 0) + 1
        if rec.error is not None:
            failures.append(rec.partition_rgs)
    return {
        "p": records[0].p if records else None,
        "total": len(records),
        "counts_by_verdict": dict(sorted(counts.items())),
        "failures": failures,
    }


def report_json_bytes(records: list[ReportRecord]) -> bytes:
    """Canonical report bytes; identical across runs and worker counts."""
    obj = {
        "schema": SCHEMA_VERSION,
        "summary": summary_of(records),
        "records": [record_to_dict(r) for r in records],
    }
    return (json.dumps(obj, sort_keys=True, separators=(",", ":")) + "\n").encode()


def report_digest(records: list[ReportRecord]) -> str:
    return hashlib.sha256(report_json_bytes(records)).hexdigest()


def _atomic_write(path: str, data: bytes):
    directory = os.path.dirname(os.path.abspath(path))
    os.makedirs(directory, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-report-")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_json_report(path: str, records: list[ReportRecord],
                      elapsed_ms: float, jobs: int):
    _atomic_write(path, report_json_bytes(records))
    meta = {"elapsed_ms": round(elapsed_ms, 3), "jobs": jobs,
            "schema": SCHEMA_VERSION}
    _atomic_write(path + ".meta.json",
                  (json.dumps(meta, sort_keys=True) + "\n").encode())


def write_csv_report(path: str, records: list[ReportRecord]):
    """Same data as the JSON records, one quoted row per fusion."""
    rows = []
    for rec in records:
        d = record_to_dict(rec)
        rows.append([
            json.dumps(d[col], sort_keys=True, separators=(",", ":"))
            if col in ("valencies", "lambda", "witness") else
            ("" if d[col] is None else str(d[col]))
            for col in CSV_COLUMNS
        ])
    import io

    buf = io.StringIO()
    writer = csv.writer(buf, quoting=csv.QUOTE_ALL, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    writer.writerows(rows)
    _atomic_write(path, buf.getvalue().encode())


def read_csv_report(path: str) -> list[ReportRecord]:
    out = []
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            d = {
                "p": int(row["p"]),
                "partition_rgs": row["partition_rgs"],
                "rank": int(row["rank"]),
                "valencies": json.loads(row["valencies"]),
                "lambda": json.loads(row["lambda"]),
                "primitive": None if row["primitive"] == "" else row["primitive"] == "True",
                "pseudocyclic": None if row["pseudocyclic"] == "" else row["pseudocyclic"] == "True",
                "schurian": ("unknown" if row["schurian"] in ("", "unknown", "None")
                             else row["schurian"] == "True"),
                "aut_order": None if row["aut_order"] == "" else int(row["aut_order"]),
                "verdict": row["verdict"],
                "witness": json.loads(row["witness"]),
                "error": None if row["error"] == "" else row["error"],
            }
            out.append(record_from_dict(d))
    return out


# ---------------------------------------------------------------------------
# advisory cache of automorphism groups, keyed by scheme digest


class AutCache:
    """File cache of Aut results; corrupt or stale entries are recomputed.

    A hit never changes a report: the cached generators are revalidated
    against the scheme and the order is recomputed from the stabilizer
    chain, which is exactly what a fresh run would produce.
    """

    def __init__(self, directory: str | None = None):
        self.directory = directory or os.environ.get(CACHE_ENV, DEFAULT_CACHE_DIR)

    def _path(self, digest: str) -> str:
        return os.path.join(self.directory, digest + ".json")

    def load(self, X: Scheme) -> AutGroup | None:
        digest = scheme_digest(X)
        try:
            with open(self._path(digest), "rb") as fh:
                data = json.loads(fh.read())
            if data.get("schema") != SCHEMA_VERSION or data.get("n") != X.n:
                return None
            gens = [tuple(g) for g in data["generators"]]
            for g in gens:
                if not is_permutation(g, X.n):
                    return None
                arr = np.array(g)
                if not np.array_equal(X.matrix[np.ix_(arr, arr)], X.matrix):
                    return None
            chain = StabilizerChain(gens, X.n)
            return AutGroup(X.n, tuple(gens), chain.order(),
                            tuple(chain.base), int(data.get("nodes", 0)))
        except (OSError, ValueError, KeyError, TypeError):
            return None

    def store(self, X: Scheme, aut: AutGroup):
        digest = scheme_digest(X)
        data = {
            "schema": SCHEMA_VERSION,
            "n": X.n,
            "generators": [list(g) for g in aut.generators],
            "nodes": aut.nodes,
        }
        try:
            _atomic_write(self._path(digest),
                          (json.dumps(data, sort_keys=True) + "\n").encode())
        except OSError:
            pass   # cache is advisory


def cached_aut_runner(cache: AutCache | None, node_cap: int = DEFAULT_NODE_CAP):
    def run(X: Scheme) -> AutGroup:
        if cache is not None:
            hit = cache.load(X)
            if hit is not None:
                return hit
        aut = automorphism_group(X, node_cap)
        if cache is not None:
            cache.store(X, aut)
        return aut
    return run


# ---------------------------------------------------------------------------
# sweeps with worker fan-out


def _classify_one(args) -> dict:
    p, rgs, node_cap, cache_dir = args
    P = SlopePartition.from_string(rgs)
    cache = AutCache(cache_dir) if cache_dir else None
    analyzer = _Analyzer(p, node_cap, cached_aut_runner(cache, node_cap))
    start = time.perf_counter()
    try:
        res = analyzer.classify(P)
        if not verify_witness(p, P, res):
            res = f"witness verification failed for {rgs} -> {res.verdict}"
    except UnclassifiableSchurian as exc:
        res = str(exc)
    elapsed = (time.perf_counter() - start) * 1000.0
    rec = record_from_result(p, P, res, elapsed)
    return record_to_dict(rec) | {"_elapsed_ms": rec.elapsed_ms}


def run_sweep(p: int, partitions, jobs: int = 1,
              node_cap: int = DEFAULT_NODE_CAP,
              cache: AutCache | None = None,
              progress=None) -> list[ReportRecord]:
    """Classify the given partitions; records sorted by canonical RGS.

    With jobs > 1 the partitions fan out over a process pool; record
    content is independent of the worker count.
    """
    rgs_list = [P.as_string() for P in partitions]
    cache_dir = cache.directory if cache is not None else None
    records: list[ReportRecord] = []
    if jobs <= 1:
        runner = cached_aut_runner(cache, node_cap)
        analyzer = _Analyzer(p, node_cap, runner)
        for i, rgs in enumerate(rgs_list):
            P = SlopePartition.from_string(rgs)
            start = time.perf_counter()
            try:
                res = analyzer.classify(P)
                if not verify_witness(p, P, res):
                    res = f"witness verification failed for {rgs} -> {res.verdict}"
            except UnclassifiableSchurian as exc:
                res = str(exc)
            elapsed = (time.perf_counter() - start) * 1000.0
            records.append(record_from_result(p, P, res, elapsed))
            if progress:
                progress(i + 1, len(rgs_list))
    else:
        args = [(p, rgs, node_cap, cache_dir) for rgs in rgs_list]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for i, d in enumerate(pool.map(_classify_one, args, chunksize=16)):
                elapsed = d.pop("_elapsed_ms")
                rec = replace(record_from_dict(d), elapsed_ms=elapsed)
                records.append(rec)
                if progress:
                    progress(i + 1, len(rgs_list))
    records.sort(key=lambda r: r.partition_rgs)
    return records
