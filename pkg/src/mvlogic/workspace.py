"""Content-addressed stores used by the HTTP service and the session CLI."""
from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

from .chain import Algebra
from .entailment import KnowledgeModule
from .errors import SchemaError
from .generator import Session
from .morphisms import Renaming
from .schemas import (
    algebra_id,
    algebra_to_doc,
    module_id,
    renaming_id,
    session_from_doc,
    session_to_doc,
)
from .translation import Bridge


@dataclass
class Workspace:
    """In-memory registry; ids are hashes of the canonical documents, so
    re-adding the same content is a no-op rather than a duplicate."""

    algebras: dict[str, Algebra] = field(default_factory=dict)
    renamings: dict[str, Renaming] = field(default_factory=dict)
    modules: dict[str, KnowledgeModule] = field(default_factory=dict)
    bridges: dict[str, Bridge] = field(default_factory=dict)
    sessions: dict[str, Session] = field(default_factory=dict)

    def add_algebra(self, alg: Algebra) -> str:
        key = algebra_id(alg)
        self.algebras[key] = alg
        return key

    def add_renaming(self, r: Renaming) -> str:
        key = renaming_id(r)
        self.renamings[key] = r
        return key

    def add_module(self, km: KnowledgeModule) -> str:
        key = module_id(km)
        self.modules[key] = km
        self.add_algebra(km.algebra)
        return key

    def add_bridge(self, b: Bridge) -> str:
        from .schemas import bridge_id

        key = bridge_id(b)
        self.bridges[key] = b
        self.add_module(b.source)
        self.add_module(b.target)
        return key

    def add_session(self, s: Session) -> str:
        self.sessions[s.id] = s
        return s.id

    def summary(self) -> dict:
        return {
            "algebras": sorted(self.algebras),
            "renamings": sorted(self.renamings),
            "modules": sorted(self.modules),
            "bridges": sorted(self.bridges),
            "sessions": sorted(self.sessions),
        }


class SessionStore:
    """Directory-backed session persistence for the command line.

    One JSON file per session keeps sessions resumable across invocations.
    """

    def __init__(self, directory: str) -> None:
        self.directory = directory
        os.makedirs(directory, exist_ok=True)

    def _path(self, session_id: str) -> str:
        safe = "".join(c for c in session_id if c.isalnum() or c in "-_")
        if not safe:
            raise SchemaError("empty session id")
        return os.path.join(self.directory, f"{safe}.json")

    def save(self, session: Session) -> str:
        path = self._path(session.id)
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(session_to_doc(session), fh, indent=2, sort_keys=True)
        return path

    def load(self, session_id: str) -> Session:
        path = self._path(session_id)
        if not os.path.exists(path):
            raise SchemaError(f"no stored session {session_id!r}")
        with open(path, encoding="utf-8") as fh:
            return session_from_doc(json.load(fh))

    def ids(self) -> list[str]:
        return sorted(
            os.path.splitext(name)[0]
            for name in os.listdir(self.directory)
            if name.endswith(".json")
        )
