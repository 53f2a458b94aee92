"""HTTP recommendation service.

Read-only JSON endpoints over a loaded index and per-position models:

* ``POST /recommend`` — query SLP in, ranked term lists out
* ``GET /healthz`` — liveness plus the loaded SLP count
* ``GET /terms`` — typeahead lookup over the candidate sets

State is immutable after startup, so the threading server needs no locks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Mapping
from urllib.parse import parse_qs, urlsplit

from .features import BackgroundCorpus
from .ranking import RankingModel, rank
from .slp import EmptyQueryError, Position, Slp


class BadRequest(Exception):
    def __init__(self, code: str, message: str = ""):
        super().__init__(message or code)
        self.code = code


@dataclass
class ServiceState:
    corpus: BackgroundCorpus
    models: Mapping[Position, RankingModel]


def _string_list(payload: dict, key: str) -> list[str]:
    value = payload.get(key, [])
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise BadRequest("INVALID_QUERY", f"{key} must be a list of IRI strings")
    return value


def handle_recommend(state: ServiceState, payload: dict) -> dict:
    if not isinstance(payload, dict):
        raise BadRequest("INVALID_QUERY", "request body must be a JSON object")
    try:
        query = Slp(
            frozenset(_string_list(payload, "sts")),
            frozenset(_string_list(payload, "ps")),
            frozenset(_string_list(payload, "ots")),
        )
    except ValueError as exc:
        raise BadRequest("INVALID_QUERY", str(exc)) from exc
    if query.is_empty():
        raise BadRequest("EMPTY_QUERY", "query SLP must contain at least one term")

    raw_positions = payload.get("positions", [p.value for p in Position])
    if not isinstance(raw_positions, list) or not raw_positions:
        raise BadRequest("INVALID_POSITIONS", "positions must be a non-empty list")
    try:
        positions = [Position.from_string(p) for p in raw_positions]
    except (ValueError, TypeError) as exc:
        raise BadRequest("INVALID_POSITIONS", str(exc)) from exc

    limit = payload.get("limit", 10)
    if not isinstance(limit, int) or isinstance(limit, bool) or limit < 1:
        raise BadRequest("INVALID_LIMIT", "limit must be a positive integer")

    response: dict = {}
    for pos in positions:
        try:
            ranked = rank(state.models[pos], state.corpus, query, pos, limit)
        except EmptyQueryError as exc:  # pragma: no cover - guarded above
            raise BadRequest("EMPTY_QUERY", str(exc)) from exc
        response[pos.value] = [
            {
                "rank": i + 1,
                "term": item.term,
                "score": item.score,
                "features": item.features.to_dict(),
            }
            for i, item in enumerate(ranked)
        ]
    return response


def handle_terms(state: ServiceState, params: dict) -> dict:
    prefix = params.get("prefix", [""])[0]
    kind = params.get("kind", [None])[0]
    try:
        limit = int(params.get("limit", ["20"])[0])
    except ValueError as exc:
        raise BadRequest("INVALID_LIMIT", "limit must be an integer") from exc
    if limit < 1:
        raise BadRequest("INVALID_LIMIT", "limit must be a positive integer")
    if kind not in (None, "type", "property"):
        raise BadRequest("INVALID_KIND", "kind must be 'type' or 'property'")

    pools: list[tuple[str, frozenset[str]]] = []
    if kind in (None, "type"):
        pools.append(("type", state.corpus.types))
    if kind in (None, "property"):
        pools.append(("property", state.corpus.properties))

    needle = prefix.lower()
    matches: list[tuple[bool, str, str]] = []
    for pool_kind, terms in pools:
        for term in terms:
            lowered = term.lower()
            if needle and needle not in lowered:
                continue
            local = lowered.rsplit("#", 1)[-1].rsplit("/", 1)[-1]
            matches.append((not local.startswith(needle), term, pool_kind))
    matches.sort()
    return {"terms": [{"term": term, "kind": k} for _weight, term, k in matches[:limit]]}


def handle_healthz(state: ServiceState) -> dict:
    return {"status": "ok", "slp_count": len(state.corpus.slps)}


class _Handler(BaseHTTPRequestHandler):
    state: ServiceState  # injected by make_server
    quiet = True

    def log_message(self, fmt, *args):  # noqa: A003 - stdlib signature
        if not self.quiet:
            super().log_message(fmt, *args)

    def _send_json(self, status: int, payload: dict) -> None:
        body = json.dumps(payload).encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def do_GET(self):  # noqa: N802 - stdlib naming
        url = urlsplit(self.path)
        if url.path == "/healthz":
            self._send_json(200, handle_healthz(self.state))
        elif url.path == "/terms":
            try:
                self._send_json(200, handle_terms(self.state, parse_qs(url.query)))
            except BadRequest as exc:
                self._send_json(400, {"error": exc.code, "message": str(exc)})
        else:
            self._send_json(404, {"error": "NOT_FOUND"})

    def do_POST(self):  # noqa: N802 - stdlib naming
        url = urlsplit(self.path)
        if url.path != "/recommend":
            self._send_json(404, {"error": "NOT_FOUND"})
            return
        try:
            length = int(self.headers.get("Content-Length", "0"))
            payload = json.loads(self.rfile.read(length).decode("utf-8") or "null")
        except (ValueError, UnicodeDecodeError):
            self._send_json(400, {"error": "INVALID_JSON"})
            return
        try:
            self._send_json(200, handle_recommend(self.state, payload))
        except BadRequest as exc:
            self._send_json(400, {"error": exc.code, "message": str(exc)})


def make_server(state: ServiceState, host: str, port: int, quiet: bool = True) -> ThreadingHTTPServer:
    handler = type("BoundHandler", (_Handler,), {"state": state, "quiet": quiet})
    return ThreadingHTTPServer((host, port), handler)
