"""Local HTTP service exposing evaluation sessions as a JSON API.

Sessions live in memory. A one-shot POST with both files evaluates
immediately; an empty POST opens a pending session whose parts arrive by
PUT in any order and are evaluated on demand. Once evaluated, a session
is immutable: repeated reads return identical bytes.

The server also serves the static web assets when a directory is
configured, falling back to index.html for client-side routes; the API
works with no assets installed.
"""

import email.policy
import json
import mimetypes
import os
import threading
import time
import uuid
from dataclasses import dataclass, field
from email.parser import BytesParser
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from typing import Optional
from urllib.parse import parse_qs, unquote, urlparse

from .dataset import Dataset, parse_dataset, parse_dataset_pair
from .errors import ParseError, RulebenchError
from .evaluate import EvaluationResult, evaluate_session
from .report import canonical_float, export_report_zip, result_document
from .rules import AlgorithmRegistry, parse_rules

DEFAULT_PORT = 8080
DEFAULT_MAX_UPLOAD = 64 * 1024 * 1024
DEFAULT_COVERAGE_LIMIT = 100

PLACEHOLDER_PAGE = b"""<!DOCTYPE html>
<html lang="en">
<head><meta charset="utf-8"><title>rulebench service</title></head>
<body>
<h1>rulebench service</h1>
<p>The JSON API is available under <code>/api/sessions</code>.
No web assets are installed; the command line client is fully
functional without them.</p>
</body>
</html>
"""


@dataclass
class Session:
    """One uploaded dataset/rules pair and its evaluation.

    Parts may be filled in any order while pending; once `result` is set
    the session never changes again.
    """

    id: str
    created_at: float
    data_text: Optional[str] = None
    rules_text: Optional[str] = None
    test_text: Optional[str] = None
    result: Optional[EvaluationResult] = None
    _zip_bytes: Optional[bytes] = None
    _lock: threading.Lock = field(default_factory=threading.Lock)

    @property
    def status(self) -> str:
        return "ready" if self.result is not None else "pending"

    def export_zip(self) -> bytes:
        """Report bundle, rendered once per session and cached."""
        with self._lock:
            if self._zip_bytes is None:
                self._zip_bytes = export_report_zip(self.result)
            return self._zip_bytes


class SessionStore:
    """Thread-safe in-memory session table."""

    def __init__(self):
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self) -> Session:
        session = Session(id=uuid.uuid4().hex, created_at=time.time())
        with self._lock:
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Optional[Session]:
        with self._lock:
            return self._sessions.get(session_id)

    def discard(self, session_id: str) -> None:
        with self._lock:
            self._sessions.pop(session_id, None)


def error_payload(exc: Exception, file_label: Optional[str] = None) -> dict:
    """Diagnostic body for 400 responses: error class, offending file,
    and line when the parser knows it."""
    return {
        "error": type(exc).__name__,
        "message": str(exc),
        "file": file_label,
        "line": getattr(exc, "line", None),
    }


def build_result(
    data_text: str,
    rules_text: str,
    test_text: Optional[str] = None,
    registry: Optional[AlgorithmRegistry] = None,
) -> EvaluationResult:
    """Parse all parts and evaluate; raises tagged parse/bind errors."""
    try:
        if test_text is not None:
            data = parse_dataset_pair(data_text, test_text)
        else:
            data = parse_dataset(data_text)
    except RulebenchError as exc:
        exc.file_label = "data"
        raise
    try:
        rules = parse_rules(rules_text, registry=registry)
    except RulebenchError as exc:
        exc.file_label = "rules"
        raise
    return evaluate_session(data, rules)


def _cell_json(value):
    if isinstance(value, float):
        return canonical_float(value)
    return value


def _example_values(data: Dataset, index: int) -> list:
    return [_cell_json(v) for v in data.examples[index].values]


def overview_document(session: Session) -> dict:
    document = result_document(session.result)
    return {
        "id": session.id,
        "status": session.status,
        "dataset": document["dataset"],
        "algorithm": document["algorithm"],
        "rules": document["rules"],
        "scatter": document["scatter"],
        "pyramid": document["pyramid"],
        "coverage_count": len(document["coverage"]),
    }


def rule_document(session: Session, rule_id: int) -> Optional[dict]:
    result = session.result
    evaluation = result.rule_evaluation(rule_id)
    if evaluation is None:
        return None
    document = result_document(result)
    rule_doc = next(r for r in document["rules"] if r["id"] == rule_id)
    target = result.dataset.target_index
    covered = [
        {
            "example_index": entry.example_index,
            "degree": canonical_float(entry.degree),
            "channel": "correct" if entry.correct else "incorrect",
            "values": _example_values(result.dataset, entry.example_index),
            "class": result.dataset.examples[entry.example_index].values[target],
        }
        for entry in result.coverage.by_rule.get(rule_id, ())
    ]
    return {
        "session_id": session.id,
        "dialect": result.dialect,
        "rule": rule_doc,
        "covered": covered,
    }


def coverage_document(session: Session, offset: int, limit: int) -> dict:
    """By-example coverage page: every example row carries the rules that
    fired on it, tagged correct or incorrect."""
    result = session.result
    data = result.dataset
    target = data.target_index
    total = len(data.examples)
    rows = []
    for index in range(offset, min(offset + limit, total)):
        entries = result.coverage.by_example.get(index, ())
        rows.append(
            {
                "example_index": index,
                "values": _example_values(data, index),
                "class": data.examples[index].values[target],
                "rules": [
                    {
                        "rule_id": entry.rule_id,
                        "degree": canonical_float(entry.degree),
                        "channel": "correct" if entry.correct else "incorrect",
                    }
                    for entry in entries
                ],
            }
        )
    return {
        "offset": offset,
        "limit": limit,
        "total": total,
        "dialect": result.dialect,
        "rows": rows,
    }


class ApiHandler(BaseHTTPRequestHandler):
    server: "RulebenchServer"

    def log_message(self, format, *args):
        pass

    # -- helpers ---------------------------------------------------------

    def _json(self, payload: dict, status: int = 200) -> None:
        body = (json.dumps(payload, sort_keys=True) + "\n").encode("utf-8")
        self.send_response(status)
        self.send_header("Content-Type", "application/json")
        self.send_header("Content-Length", str(len(body)))
        self.send_header("Cache-Control", "no-cache")
        self.end_headers()
        self.wfile.write(body)

    def _bytes(self, body: bytes, content_type: str, status: int = 200) -> None:
        self.send_response(status)
        self.send_header("Content-Type", content_type)
        self.send_header("Content-Length", str(len(body)))
        self.end_headers()
        self.wfile.write(body)

    def _read_body(self) -> Optional[bytes]:
        """Request body, or None after responding 413 when it exceeds the
        upload cap."""
        length = int(self.headers.get("Content-Length") or 0)
        if length > self.server.max_upload:
            self._json(
                {
                    "error": "UploadTooLarge",
                    "message": f"upload exceeds {self.server.max_upload} bytes",
                },
                status=413,
            )
            self.close_connection = True
            return None
        return self.rfile.read(length) if length else b""

    def _session_or_404(self, session_id: str) -> Optional[Session]:
        session = self.server.store.get(session_id)
        if session is None:
            self._json(
                {"error": "SessionNotFound", "message": f"no session {session_id}"},
                status=404,
            )
        return session

    def _ready_or_409(self, session: Session) -> bool:
        if session.result is None:
            self._json(
                {
                    "error": "SessionPending",
                    "message": "session has not been evaluated yet",
                },
                status=409,
            )
            return False
        return True

    def _multipart_texts(self, body: bytes) -> Optional[dict]:
        """Decode multipart/form-data parts into {field_name: text}.

        Returns None (after responding 400) when the payload is not
        decodable.
        """
        content_type = self.headers.get("Content-Type", "")
        if not body or "multipart" not in content_type.lower():
            return {}
        prefix = f"Content-Type: {content_type}\r\nMIME-Version: 1.0\r\n\r\n"
        message = BytesParser(policy=email.policy.default).parsebytes(
            prefix.encode("utf-8") + body
        )
        parts = {}
        try:
            for part in message.iter_parts():
                name = part.get_param("name", header="content-disposition")
                if not name:
                    continue
                payload = part.get_payload(decode=True) or b""
                parts[str(name)] = payload.decode("utf-8")
        except UnicodeDecodeError:
            self._json(
                {"error": "BadUpload", "message": "file parts must be UTF-8 text"},
                status=400,
            )
            return None
        return parts

    def _evaluate(self, session: Session) -> bool:
        """Evaluate a pending session in place; responds and returns False
        on failure."""
        if session.data_text is None or session.rules_text is None:
            missing = "data" if session.data_text is None else "rules"
            self._json(
                {
                    "error": "MissingPart",
                    "message": f"session is missing its {missing} file",
                    "file": missing,
                },
                status=400,
            )
            return False
        try:
            session.result = build_result(
                session.data_text,
                session.rules_text,
                session.test_text,
                self.server.registry,
            )
        except RulebenchError as exc:
            self._json(
                error_payload(exc, getattr(exc, "file_label", None)), status=400
            )
            return False
        return True

    # -- verbs -----------------------------------------------------------

    def do_POST(self):
        parsed = urlparse(self.path)
        path = parsed.path.rstrip("/")
        body = self._read_body()
        if body is None:
            return

        if path == "/api/sessions":
            parts = self._multipart_texts(body)
            if parts is None:
                return
            session = self.server.store.create()
            session.data_text = parts.get("data")
            session.rules_text = parts.get("rules")
            session.test_text = parts.get("test")
            if session.data_text is not None and session.rules_text is not None:
                if not self._evaluate(session):
                    self.server.store.discard(session.id)
                    return
                self._json(
                    {
                        "id": session.id,
                        "status": session.status,
                        "rule_count": len(session.result.rules),
                    },
                    status=201,
                )
            else:
                self._json({"id": session.id, "status": session.status}, status=201)
            return

        match = _match(path, "/api/sessions/{id}/evaluate")
        if match:
            session = self._session_or_404(match[0])
            if session is None:
                return
            if session.result is None and not self._evaluate(session):
                return
            self._json(
                {
                    "id": session.id,
                    "status": session.status,
                    "rule_count": len(session.result.rules),
                }
            )
            return

        self._json({"error": "NotFound", "message": f"no route {path}"}, status=404)

    def do_PUT(self):
        parsed = urlparse(self.path)
        path = parsed.path.rstrip("/")
        body = self._read_body()
        if body is None:
            return

        match = _match(path, "/api/sessions/{id}/{part}")
        if match and match[1] in ("data", "rules", "test"):
            session = self._session_or_404(match[0])
            if session is None:
                return
            if session.result is not None:
                self._json(
                    {
                        "error": "SessionImmutable",
                        "message": "session is already evaluated",
                    },
                    status=409,
                )
                return
            try:
                text = body.decode("utf-8")
            except UnicodeDecodeError:
                self._json(
                    {"error": "BadUpload", "message": "body must be UTF-8 text"},
                    status=400,
                )
                return
            setattr(session, f"{match[1]}_text", text)
            self._json({"id": session.id, "status": session.status, "part": match[1]})
            return

        self._json({"error": "NotFound", "message": f"no route {path}"}, status=404)

    def do_GET(self):
        parsed = urlparse(self.path)
        path = parsed.path.rstrip("/") or "/"

        if path.startswith("/api/"):
            self._api_get(path, parse_qs(parsed.query))
            return
        self._static(parsed.path)

    def _api_get(self, path: str, query: dict) -> None:
        match = _match(path, "/api/sessions/{id}/overview")
        if match:
            session = self._session_or_404(match[0])
            if session and self._ready_or_409(session):
                self._json(overview_document(session))
            return

        match = _match(path, "/api/sessions/{id}/rules/{k}")
        if match:
            session = self._session_or_404(match[0])
            if not session or not self._ready_or_409(session):
                return
            try:
                rule_id = int(match[1])
            except ValueError:
                self._json(
                    {"error": "RuleNotFound", "message": f"bad rule id {match[1]}"},
                    status=404,
                )
                return
            document = rule_document(session, rule_id)
            if document is None:
                self._json(
                    {"error": "RuleNotFound", "message": f"no rule {rule_id}"},
                    status=404,
                )
                return
            self._json(document)
            return

        match = _match(path, "/api/sessions/{id}/coverage")
        if match:
            session = self._session_or_404(match[0])
            if not session or not self._ready_or_409(session):
                return
            try:
                offset = int(query.get("offset", ["0"])[0])
                limit = int(query.get("limit", [str(DEFAULT_COVERAGE_LIMIT)])[0])
            except ValueError:
                offset = limit = -1
            if offset < 0 or limit <= 0:
                self._json(
                    {
                        "error": "BadQuery",
                        "message": "offset must be >= 0 and limit > 0",
                    },
                    status=400,
                )
                return
            self._json(coverage_document(session, offset, limit))
            return

        match = _match(path, "/api/sessions/{id}/export.zip")
        if match:
            session = self._session_or_404(match[0])
            if not session or not self._ready_or_409(session):
                return
            body = session.export_zip()
            self.send_response(200)
            self.send_header("Content-Type", "application/zip")
            self.send_header("Content-Length", str(len(body)))
            self.send_header(
                "Content-Disposition", 'attachment; filename="report.zip"'
            )
            self.end_headers()
            self.wfile.write(body)
            return

        self._json({"error": "NotFound", "message": f"no route {path}"}, status=404)

    def _static(self, raw_path: str) -> None:
        """Serve web assets; unknown paths fall back to index.html so
        client-side routes deep-link, and a placeholder page stands in
        when no assets are installed."""
        ui_dir = self.server.ui_dir
        if ui_dir:
            root = os.path.realpath(ui_dir)
            relative = unquote(raw_path).lstrip("/")
            candidate = os.path.realpath(os.path.join(root, relative))
            inside = candidate == root or candidate.startswith(root + os.sep)
            if inside and os.path.isfile(candidate):
                content_type = (
                    mimetypes.guess_type(candidate)[0] or "application/octet-stream"
                )
                with open(candidate, "rb") as handle:
                    self._bytes(handle.read(), content_type)
                return
            index = os.path.join(root, "index.html")
            if os.path.isfile(index):
                with open(index, "rb") as handle:
                    self._bytes(handle.read(), "text/html; charset=utf-8")
                return
        self._bytes(PLACEHOLDER_PAGE, "text/html; charset=utf-8")


def _match(path: str, pattern: str) -> Optional[list[str]]:
    """Match /a/{x}/b patterns segment by segment; returns the captured
    segments or None."""
    path_parts = path.strip("/").split("/")
    pattern_parts = pattern.strip("/").split("/")
    if len(path_parts) != len(pattern_parts):
        return None
    captures = []
    for got, want in zip(path_parts, pattern_parts):
        if want.startswith("{") and want.endswith("}"):
            if not got:
                return None
            captures.append(got)
        elif got != want:
            return None
    return captures


class RulebenchServer(ThreadingHTTPServer):
    daemon_threads = True

    def __init__(
        self,
        address,
        store: SessionStore,
        registry: Optional[AlgorithmRegistry] = None,
        ui_dir: Optional[str] = None,
        max_upload: int = DEFAULT_MAX_UPLOAD,
    ):
        super().__init__(address, ApiHandler)
        self.store = store
        self.registry = registry
        self.ui_dir = ui_dir
        self.max_upload = max_upload


def make_server(
    host: str = "127.0.0.1",
    port: int = DEFAULT_PORT,
    registry: Optional[AlgorithmRegistry] = None,
    ui_dir: Optional[str] = None,
    max_upload: int = DEFAULT_MAX_UPLOAD,
) -> RulebenchServer:
    """Bind the service; callers run serve_forever() and shutdown()."""
    return RulebenchServer(
        (host, port),
        store=SessionStore(),
        registry=registry,
        ui_dir=ui_dir,
        max_upload=max_upload,
    )
