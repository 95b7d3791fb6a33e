"""On-disk JSON cache for sectors, operators and reports.

Each entry records a fingerprint (algebra, spins, particle number, object name
and conventions version).  An entry whose fingerprint does not match, or that
cannot be parsed, is skipped with a warning and rebuilt.
"""
from __future__ import annotations

import hashlib
import json
import os
import warnings
from pathlib import Path
from typing import Any

from .fock import SectorBasis, enumerate_sector
from .report import CONVENTIONS_VERSION
from .sparse import SparseOperator

SCHEMA_VERSION = 1
ENV_VAR = "OSPBRANCH_CACHE_DIR"


class CacheWarning(UserWarning):
    pass


def _key_text(key: tuple) -> str:
    return json.dumps([str(k) for k in key])


class Cache:
    def __init__(self, root: str | os.PathLike, conventions_version: str = CONVENTIONS_VERSION):
        self.root = Path(root)
        self.root.mkdir(parents=True, exist_ok=True)
        self.conventions_version = conventions_version
        self.hits = 0
        self.misses = 0

    @classmethod
    def from_env(cls) -> "Cache | None":
        root = os.environ.get(ENV_VAR)
        return cls(root) if root else None

    # -- raw entries -------------------------------------------------------------
    def fingerprint(self, kind: str, m: int, n: int, spins: int, N: Any, name: str) -> dict:
        return {"kind": kind, "m": m, "n": n, "spins": spins, "N": N, "name": name,
                "conventions_version": self.conventions_version, "schema_version": SCHEMA_VERSION}

    def path(self, fp: dict) -> Path:
        # the file name ignores the conventions version, so a bump finds and rejects the old entry
        ident = {k: v for k, v in fp.items() if k != "conventions_version"}
        digest = hashlib.sha256(json.dumps(ident, sort_keys=True).encode()).hexdigest()[:20]
        return self.root / fp["kind"] / f"m{fp['m']}n{fp['n']}s{fp['spins']}" / f"{digest}.json"

    def store(self, fp: dict, payload: Any) -> Path:
        path = self.path(fp)
        path.parent.mkdir(parents=True, exist_ok=True)
        text = json.dumps({"fingerprint": fp, "payload": payload}, sort_keys=True)
        tmp = path.with_suffix(f".tmp{os.getpid()}")
        tmp.write_text(text)
        os.replace(tmp, path)
        return path

    def load(self, fp: dict) -> Any | None:
        path = self.path(fp)
        if not path.exists():
            self.misses += 1
            return None
        try:
            entry = json.loads(path.read_text())
            found = entry["fingerprint"]
            payload = entry["payload"]
        except (OSError, ValueError, KeyError, TypeError) as exc:
            warnings.warn(f"ignoring corrupt cache entry {path}: {exc}", CacheWarning, stacklevel=2)
            self.misses += 1
            return None
        if found != fp:
            warnings.warn(f"ignoring stale cache entry {path} (fingerprint mismatch)", CacheWarning, stacklevel=2)
            self.misses += 1
            return None
        self.hits += 1
        return payload

    # -- sectors -----------------------------------------------------------------
    def store_sector(self, basis: SectorBasis) -> Path:
        fp = self.fingerprint("sector", basis.spec.m, basis.spec.n, basis.spins, basis.N, "states")
        return self.store(fp, [list(s) for s in basis.states])

    def load_sector_states(self, spec, spins: int, N: int) -> list[tuple] | None:
        payload = self.load(self.fingerprint("sector", spec.m, spec.n, spins, N, "states"))
        return None if payload is None else [tuple(s) for s in payload]

    def sector(self, spec, spins: int, N: int, dim_cap: int | None = None) -> SectorBasis:
        """Enumerate a sector, checking it against (or seeding) the cached state list."""
        basis = enumerate_sector(spec, spins, N, dim_cap)
        cached = self.load_sector_states(spec, spins, N)
        if cached is None:
            self.store_sector(basis)
        elif cached != list(basis.states):
            warnings.warn(f"cached sector {basis.key} disagrees with enumeration; rewriting", CacheWarning, stacklevel=2)
            self.store_sector(basis)
        return basis

    # -- operators (hooks used by OperatorAlgebra) ---------------------------------
    def _op_fp(self, alg, key: tuple) -> dict:
        return self.fingerprint("operator", alg.spec.m, alg.spec.n, alg.spins, None, _key_text(key))

    def store_operator(self, alg, key: tuple, op: SparseOperator) -> Path:
        payload = {"domain_N": op.domain.N, "codomain_N": op.codomain.N, "den": op.den,
                   "parity": op.parity, "name": op.name,
                   "entries": [[r, c, num] for r, c, num, _ in op.entries()]}
        return self.store(self._op_fp(alg, key), payload)

    def load_operator(self, alg, key: tuple) -> SparseOperator | None:
        payload = self.load(self._op_fp(alg, key))
        if payload is None:
            return None
        try:
            dom = alg.sector(payload["domain_N"])
            cod = alg.sector(payload["codomain_N"])
            op = SparseOperator.from_entries(dom, cod, [tuple(e) for e in payload["entries"]],
                                             payload["parity"], payload["name"])
            if payload["den"] != 1:
                op = SparseOperator(dom, cod, op.num, payload["den"], payload["parity"], payload["name"])
            return op
        except (KeyError, TypeError, ValueError, IndexError) as exc:
            warnings.warn(f"ignoring malformed cached operator {key}: {exc}", CacheWarning, stacklevel=2)
            return None

    # -- reports -----------------------------------------------------------------
    def _report_fp(self, command: str, config: dict) -> dict:
        return self.fingerprint("report", config.get("m"), config.get("n"), config.get("spins"),
                                config.get("N"), command + ":" + json.dumps(config, sort_keys=True))

    def store_report(self, command: str, config: dict, text: str) -> Path:
        return self.store(self._report_fp(command, config), text)

    def load_report(self, command: str, config: dict) -> str | None:
        return self.load(self._report_fp(command, config))
