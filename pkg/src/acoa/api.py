"""HTTP service: public read API plus authenticated admin CRUD.

Public surface: work list, work detail (with computed timeline layout),
About content and media blobs with byte-range support. Admin surface:
bearer-token login and full editorial CRUD. All JSON responses are
serialized deterministically (sorted keys, fixed separators), so equal
repository state yields byte-identical bodies.
"""

from __future__ import annotations

import json
from typing import Any
from urllib.parse import quote

from fastapi import Depends, FastAPI, File, Form, Header, Request, Response, UploadFile
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse

from . import chronology, encoding, store
from .auth import Authenticator
from .chronology import TimelineLayout
from .errors import AcoaError, InvalidWork, Unauthorized
from .model import (
    AboutContent,
    Artwork,
    Issue,
    Phase,
    SubPhase,
    ValidationReport,
    resize_phases,
)
from .store import Repository

STATUS_BY_CODE = {
    "unauthorized": 401,
    "invalid_credentials": 401,
    "not_found": 404,
    "confirmation_required": 409,
    "truncation_refused": 409,
    "invalid_work": 422,
    "invalid_about": 422,
    "invalid_count": 422,
    "kind_mismatch": 422,
    "empty_blob": 422,
    "dangling_media_ref": 422,
    "unsluggable": 422,
    "invalid_payload": 422,
    "invalid_range": 416,
    "io_failure": 500,
}


class CanonicalJSONResponse(JSONResponse):
    """JSON with sorted keys and fixed separators for byte-stable bodies."""

    def render(self, content: Any) -> bytes:
        return json.dumps(
            content, ensure_ascii=False, sort_keys=True, separators=(",", ":")
        ).encode("utf-8")


class _RangeError(AcoaError):
    code = "invalid_range"

    def __init__(self, message: str, size: int):
        super().__init__(message)
        self.size = size


class _BadJson(AcoaError):
    code = "invalid_payload"


async def _json_body(request: Request) -> Any:
    try:
        return await request.json()
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise _BadJson("request body is not valid JSON") from exc


def _layout_to_dict(layout: TimelineLayout) -> dict:
    return {
        "mode": layout.mode,
        "ticks": [
            {"ordinal": t.ordinal, "position": t.position, "tick_label": t.tick_label}
            for t in layout.ticks
        ],
    }


def _work_detail_dict(work: Artwork) -> dict:
    doc = encoding.work_to_doc(work)
    doc["layout"] = _layout_to_dict(chronology.layout(work.phases))
    return doc


def _summary_dict(summary: store.WorkSummary) -> dict:
    return {
        "slug": summary.slug,
        "title": summary.title,
        "artist_name": summary.artist_name,
        "creation_year": summary.creation_year,
        "cover_media": summary.cover_media,
        "phase_count": summary.phase_count,
    }


def _asset_dict(asset) -> dict:
    return encoding.asset_to_doc(asset)


# -- payload parsing -------------------------------------------------------


class _PayloadIssues:
    def __init__(self):
        self.issues: list[Issue] = []

    def add(self, path: str, message: str) -> None:
        self.issues.append(Issue(code="invalid_payload", path=path, message=message))

    def raise_if_any(self) -> None:
        if self.issues:
            raise InvalidWork(
                "payload does not have the expected shape",
                report=ValidationReport(issues=self.issues),
            )


def _expect_str(problems: _PayloadIssues, data: dict, key: str, path: str, default: str = "") -> str:
    value = data.get(key, default)
    if not isinstance(value, str):
        problems.add(path, f"{key} must be a string")
        return default
    return value


def _expect_opt_str(problems: _PayloadIssues, data: dict, key: str, path: str) -> str | None:
    value = data.get(key)
    if value is not None and not isinstance(value, str):
        problems.add(path, f"{key} must be a string or null")
        return None
    return value


def _expect_opt_int(problems: _PayloadIssues, data: dict, key: str, path: str) -> int | None:
    value = data.get(key)
    if value is not None and (isinstance(value, bool) or not isinstance(value, int)):
        problems.add(path, f"{key} must be an integer or null")
        return None
    return value


def _expect_media(problems: _PayloadIssues, data: dict, path: str) -> list[str]:
    value = data.get("media", [])
    if not isinstance(value, list) or any(not isinstance(m, str) for m in value):
        problems.add(f"{path}.media", "media must be a list of asset ids")
        return []
    return list(value)


def _parse_subphase(problems: _PayloadIssues, data: Any, path: str) -> SubPhase:
    if not isinstance(data, dict):
        problems.add(path, "subphase must be an object")
        return SubPhase(ordinal=0, label="")
    ordinal = data.get("ordinal")
    if isinstance(ordinal, bool) or not isinstance(ordinal, int):
        problems.add(f"{path}.ordinal", "ordinal must be an integer")
        ordinal = 0
    return SubPhase(
        ordinal=ordinal,
        label=_expect_str(problems, data, "label", f"{path}.label"),
        description=_expect_str(problems, data, "description", f"{path}.description"),
        media=_expect_media(problems, data, path),
    )


def _parse_phase(problems: _PayloadIssues, data: Any, path: str) -> Phase:
    if not isinstance(data, dict):
        problems.add(path, "phase must be an object")
        return Phase(ordinal=0, label="")
    ordinal = data.get("ordinal")
    if isinstance(ordinal, bool) or not isinstance(ordinal, int):
        problems.add(f"{path}.ordinal", "ordinal must be an integer")
        ordinal = 0
    subphases_raw = data.get("subphases", [])
    if not isinstance(subphases_raw, list):
        problems.add(f"{path}.subphases", "subphases must be a list")
        subphases_raw = []
    return Phase(
        ordinal=ordinal,
        label=_expect_str(problems, data, "label", f"{path}.label"),
        year=_expect_opt_int(problems, data, "year", f"{path}.year"),
        description=_expect_str(problems, data, "description", f"{path}.description"),
        media=_expect_media(problems, data, path),
        subphases=[
            _parse_subphase(problems, s, f"{path}.subphases[{j}]")
            for j, s in enumerate(subphases_raw)
        ],
    )


def parse_artwork_payload(data: Any, slug: str = "") -> Artwork:
    """Build an Artwork from a request body, collecting shape problems.

    Server-managed fields (id, timestamps, layout) in the payload are
    ignored, so a GET body can be resubmitted unchanged.
    """
    problems = _PayloadIssues()
    if not isinstance(data, dict):
        problems.add("$", "payload must be a JSON object")
        problems.raise_if_any()
    phases_raw = data.get("phases", [])
    if not isinstance(phases_raw, list):
        problems.add("phases", "phases must be a list")
        phases_raw = []
    work = Artwork(
        id=slug,
        title=_expect_str(problems, data, "title", "title"),
        artist_name=_expect_str(problems, data, "artist_name", "artist_name"),
        creation_year=_expect_opt_int(problems, data, "creation_year", "creation_year"),
        cover_media=_expect_str(problems, data, "cover_media", "cover_media"),
        phases=[_parse_phase(problems, p, f"phases[{i}]") for i, p in enumerate(phases_raw)],
    )
    problems.raise_if_any()
    return work


def parse_about_payload(data: Any) -> AboutContent:
    problems = _PayloadIssues()
    if not isinstance(data, dict):
        problems.add("$", "payload must be a JSON object")
        problems.raise_if_any()
    about = AboutContent(
        title=_expect_str(problems, data, "title", "title"),
        body=_expect_str(problems, data, "body", "body"),
        media=_expect_media(problems, data, "$"),
    )
    problems.raise_if_any()
    return about


# -- range handling --------------------------------------------------------


def _resolve_range(header: str | None, size: int) -> tuple[int, int] | None:
    """Resolve a single bytes range to inclusive (start, end), or None for
    a full response. Unsatisfiable ranges raise; non-bytes units and
    multi-range requests are ignored per RFC 7233."""
    if header is None:
        return None
    units, _, spec_part = header.partition("=")
    if units.strip() != "bytes" or "," in spec_part:
        return None
    spec_part = spec_part.strip()
    start_s, dash, end_s = spec_part.partition("-")
    if not dash:
        return None
    start_s = start_s.strip()
    end_s = end_s.strip()
    if not start_s and not end_s:
        return None
    try:
        if not start_s:
            suffix = int(end_s)
            if suffix <= 0:
                raise _RangeError(f"unsatisfiable range {header!r}", size)
            start = max(size - suffix, 0)
            end = size - 1
        else:
            start = int(start_s)
            end = int(end_s) if end_s else size - 1
    except ValueError:
        return None
    if start >= size or end < start:
        raise _RangeError(f"unsatisfiable range {header!r}", size)
    return start, min(end, size - 1)


# -- app factory -------------------------------------------------------------


def create_app(
    repo: Repository,
    authenticator: Authenticator | None = None,
    cors_origin: str | None = None,
) -> FastAPI:
    app = FastAPI(title="acoa", openapi_url=None, docs_url=None, redoc_url=None)

    if cors_origin:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(
            CORSMiddleware,
            allow_origins=[cors_origin],
            allow_methods=["*"],
            allow_headers=["*"],
        )

    @app.exception_handler(AcoaError)
    async def _handle_error(request: Request, exc: AcoaError):
        body: dict[str, Any] = {"code": exc.code, "message": exc.message}
        if isinstance(exc, InvalidWork) and exc.report is not None:
            body["issues"] = [
                {"code": i.code, "path": i.path, "message": i.message}
                for i in exc.report.issues
            ]
        headers = {}
        if isinstance(exc, _RangeError):
            headers["Content-Range"] = f"bytes */{exc.size}"
        return CanonicalJSONResponse(
            body, status_code=STATUS_BY_CODE.get(exc.code, 500), headers=headers
        )

    @app.exception_handler(RequestValidationError)
    async def _handle_validation(request: Request, exc: RequestValidationError):
        return CanonicalJSONResponse(
            {"code": "invalid_payload", "message": "request does not match the endpoint contract"},
            status_code=422,
        )

    def require_admin(authorization: str | None = Header(None)) -> str:
        if authenticator is None:
            raise Unauthorized("no administrative access is configured")
        if not authorization:
            raise Unauthorized("missing bearer token")
        scheme, _, token = authorization.partition(" ")
        if scheme.lower() != "bearer" or not token.strip():
            raise Unauthorized("malformed authorization header")
        return authenticator.authorize(token.strip())

    # -- public ------------------------------------------------------------

    @app.get("/api/works")
    def works_list():
        return CanonicalJSONResponse([_summary_dict(s) for s in store.list_works(repo)])

    @app.get("/api/works/{slug}")
    def work_detail(slug: str):
        return CanonicalJSONResponse(_work_detail_dict(store.get_work(repo, slug)))

    @app.get("/api/about")
    def about_content():
        return CanonicalJSONResponse(encoding.about_to_doc(store.get_about(repo)))

    @app.api_route("/media/{media_id}", methods=["GET", "HEAD"])
    def media_blob(media_id: str, request: Request):
        asset, data = store.get_media(repo, media_id)
        headers = {
            "Accept-Ranges": "bytes",
            "X-Playback-Policy": asset.playback_policy,
        }
        # Caption/credit travel percent-encoded so the values stay ASCII.
        if asset.caption:
            headers["X-Media-Caption"] = quote(asset.caption, safe="")
        if asset.credit:
            headers["X-Media-Credit"] = quote(asset.credit, safe="")
        if request.method == "HEAD":
            headers["Content-Length"] = str(asset.byte_size)
            return Response(media_type=asset.content_type, headers=headers)
        resolved = _resolve_range(request.headers.get("range"), asset.byte_size)
        if resolved is None:
            return Response(content=data, media_type=asset.content_type, headers=headers)
        start, end = resolved
        headers["Content-Range"] = f"bytes {start}-{end}/{asset.byte_size}"
        return Response(
            content=data[start : end + 1],
            status_code=206,
            media_type=asset.content_type,
            headers=headers,
        )

    # -- admin ---------------------------------------------------------------

    @app.post("/api/admin/login")
    async def admin_login(request: Request):
        payload = await _json_body(request)
        if (
            not isinstance(payload, dict)
            or not isinstance(payload.get("username"), str)
            or not isinstance(payload.get("password"), str)
        ):
            return CanonicalJSONResponse(
                {"code": "invalid_payload", "message": "username and password are required"},
                status_code=422,
            )
        if authenticator is None:
            raise Unauthorized("no administrative access is configured")
        session = authenticator.login(payload["username"], payload["password"])
        return CanonicalJSONResponse(
            {
                "token": session.token,
                "expires_at": encoding.format_timestamp(session.expires_at),
            }
        )

    @app.post("/api/admin/works")
    async def admin_create_work(request: Request, user: str = Depends(require_admin)):
        work = parse_artwork_payload(await _json_body(request))
        slug = store.put_work(repo, work)
        return CanonicalJSONResponse({"slug": slug}, status_code=201)

    @app.put("/api/admin/works/{slug}")
    async def admin_update_work(
        slug: str, request: Request, user: str = Depends(require_admin)
    ):
        store.get_work(repo, slug)  # 404 before any parsing side effects
        work = parse_artwork_payload(await _json_body(request), slug=slug)
        store.put_work(repo, work)
        return CanonicalJSONResponse(_work_detail_dict(store.get_work(repo, slug)))

    @app.delete("/api/admin/works/{slug}")
    def admin_delete_work(
        slug: str, confirm: bool = False, user: str = Depends(require_admin)
    ):
        store.delete_work(repo, slug, confirm)
        return Response(status_code=204)

    @app.put("/api/admin/works/{slug}/phase-count")
    async def admin_resize_phases(
        slug: str, request: Request, user: str = Depends(require_admin)
    ):
        payload = await _json_body(request)
        if not isinstance(payload, dict):
            return CanonicalJSONResponse(
                {"code": "invalid_payload", "message": "a JSON object body is required"},
                status_code=422,
            )
        new_count = payload.get("new_count")
        if isinstance(new_count, bool) or not isinstance(new_count, int):
            return CanonicalJSONResponse(
                {"code": "invalid_count", "message": "new_count must be an integer"},
                status_code=422,
            )
        allow_truncation = bool(payload.get("allow_truncation", False))
        work = store.get_work(repo, slug)
        resized = resize_phases(work, new_count, allow_truncation)
        store.put_work(repo, resized)
        return CanonicalJSONResponse(_work_detail_dict(store.get_work(repo, slug)))

    @app.post("/api/admin/media")
    async def admin_upload_media(
        file: UploadFile = File(...),
        kind: str = Form(...),
        caption: str | None = Form(None),
        credit: str | None = Form(None),
        user: str = Depends(require_admin),
    ):
        data = await file.read()
        asset = store.put_media(
            repo,
            data,
            filename=file.filename or "upload",
            content_type=file.content_type or "application/octet-stream",
            kind=kind,
            caption=caption,
            credit=credit,
        )
        return CanonicalJSONResponse(_asset_dict(asset), status_code=201)

    @app.put("/api/admin/about")
    async def admin_put_about(request: Request, user: str = Depends(require_admin)):
        about = parse_about_payload(await _json_body(request))
        store.put_about(repo, about)
        return CanonicalJSONResponse(encoding.about_to_doc(store.get_about(repo)))

    return app
