"""HTTP teaching service: ask questions, edit KB/templates, regenerate,
retrain, evaluate, and record corrections over a versioned workspace.

Mutations (PUT kb/templates, generate, train, feedback) are serialized by a
single writer lock. Reads are lock-free: /ask grabs the current immutable
(kb, model, version) snapshot with one reference read, so no request can mix
a new model with an old KB or vice versa. train() swaps the snapshot
atomically after its files are safely renamed into place.
"""

import logging
import threading
from dataclasses import dataclass
from typing import Optional

from fastapi import FastAPI, HTTPException, Request, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field
from starlette.concurrency import run_in_threadpool

from faqforge import classifier, responder
from faqforge import kb as kbmod
from faqforge import templates as tplmod
from faqforge.workspace import (
    KB_FILE, TEMPLATES_FILE, InvalidDocumentError, NoDatasetError, NoModelError,
    StaleDatasetError, UnknownIntentError, Workspace,
)

logger = logging.getLogger("faqforge.service")


@dataclass(frozen=True)
class Snapshot:
    """Immutable, internally consistent serving state."""
    version: int
    kb: kbmod.KnowledgeBase
    model: classifier.IntentModel


class AskRequest(BaseModel):
    question: str
    threshold: Optional[float] = Field(default=None, ge=0.0, le=1.0)


class TrainRequest(BaseModel):
    alpha: float = Field(default=1.0, gt=0.0)
    holdout: float = Field(default=0.1, ge=0.0, lt=1.0)
    seed: int = Field(default=42, ge=0)


class FeedbackRequest(BaseModel):
    question: str
    intent: str


def _violations_response(report, status_code=422):
    return JSONResponse(status_code=status_code, content={
        "valid": False,
        "violations": [v.to_dict() for v in report.violations],
    })


def _document_error_response(code, message):
    return JSONResponse(status_code=422, content={
        "valid": False,
        "violations": [{"code": code, "locator": "$", "message": message}],
    })


def create_app(workspace_path, default_threshold=0.5, cors_origins=None) -> FastAPI:
    app = FastAPI(title="faqforge", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=list(cors_origins) if cors_origins else ["*"],
        allow_methods=["*"],
        allow_headers=["*"],
    )

    ws = Workspace(workspace_path)
    lock = threading.Lock()
    state = {"snapshot": None}

    def _load_initial_snapshot():
        try:
            model = ws.load_model()
        except (NoModelError, FileNotFoundError):
            return
        try:
            kb = ws.load_kb()
        except FileNotFoundError:
            return
        version = ws.model_version or ws.version
        state["snapshot"] = Snapshot(version=version, kb=kb, model=model)
        logger.info("loaded snapshot version %s", version)

    _load_initial_snapshot()

    # -- ask (read-only, lock-free) --------------------------------------

    @app.post("/v1/ask")
    def ask(req: AskRequest):
        snapshot = state["snapshot"]
        if not req.question or not req.question.strip():
            raise HTTPException(status_code=400, detail="question must be non-empty")
        if snapshot is None:
            raise HTTPException(status_code=409, detail="no trained model yet; run train first")
        threshold = default_threshold if req.threshold is None else req.threshold
        result = responder.answer(snapshot.kb, snapshot.model, req.question, threshold=threshold)
        payload = result.to_dict()
        payload["version"] = snapshot.version
        return payload

    # -- documents --------------------------------------------------------

    @app.get("/v1/kb")
    def get_kb():
        try:
            raw = ws.read_bytes(KB_FILE)
        except FileNotFoundError:
            raise HTTPException(status_code=404, detail="no kb.json in workspace")
        return Response(content=raw, media_type="application/json")

    @app.put("/v1/kb")
    async def put_kb(request: Request):
        raw = await request.body()
        return await run_in_threadpool(_put_kb, raw)

    def _put_kb(raw: bytes):
        with lock:
            try:
                report = ws.store_kb(raw.decode("utf-8"))
            except UnicodeDecodeError:
                return _document_error_response("SYNTAX_ERROR", "document is not valid UTF-8")
            except kbmod.KbSyntaxError as exc:
                return _document_error_response("SYNTAX_ERROR", str(exc))
            except kbmod.KbSchemaError as exc:
                return _document_error_response("SCHEMA_ERROR", str(exc))
            except InvalidDocumentError as exc:
                return _violations_response(exc.report)
            return {"version": ws.version, "valid": True,
                    "violations": [v.to_dict() for v in report.violations]}

    @app.get("/v1/templates")
    def get_templates():
        try:
            raw = ws.read_bytes(TEMPLATES_FILE)
        except FileNotFoundError:
            raise HTTPException(status_code=404, detail="no templates.json in workspace")
        return Response(content=raw, media_type="application/json")

    @app.put("/v1/templates")
    async def put_templates(request: Request):
        raw = await request.body()
        return await run_in_threadpool(_put_templates, raw)

    def _put_templates(raw: bytes):
        with lock:
            try:
                report = ws.store_templates(raw.decode("utf-8"))
            except UnicodeDecodeError:
                return _document_error_response("SYNTAX_ERROR", "document is not valid UTF-8")
            except tplmod.TemplateSyntaxError as exc:
                return _document_error_response("SYNTAX_ERROR", str(exc))
            except tplmod.TemplateSchemaError as exc:
                return _document_error_response("SCHEMA_ERROR", str(exc))
            except FileNotFoundError:
                raise HTTPException(status_code=409, detail="no kb.json to validate against")
            except InvalidDocumentError as exc:
                return _violations_response(exc.report)
            return {"version": ws.version, "valid": True,
                    "violations": [v.to_dict() for v in report.violations]}

    # -- pipeline ----------------------------------------------------------

    @app.post("/v1/generate")
    def generate():
        with lock:
            try:
                report = ws.generate()
            except FileNotFoundError as exc:
                raise HTTPException(status_code=409, detail=str(exc))
            except InvalidDocumentError as exc:
                return _violations_response(exc.report)
            except tplmod.GenerationError as exc:
                return JSONResponse(status_code=422, content={
                    "valid": False,
                    "violations": [{"code": "GENERATION_ERROR",
                                    "locator": f"template id={exc.template_id}",
                                    "message": str(exc)}],
                })
            payload = report.to_dict()
            payload["version"] = ws.version
            return payload

    @app.post("/v1/train")
    def train(req: TrainRequest):
        with lock:
            try:
                result = ws.train(alpha=req.alpha, holdout=req.holdout, seed=req.seed,
                                  threshold=default_threshold)
            except (NoDatasetError, StaleDatasetError) as exc:
                raise HTTPException(status_code=409, detail=str(exc))
            kb = ws.load_kb()
            state["snapshot"] = Snapshot(version=result.version, kb=kb, model=result.model)
        logger.info("swapped snapshot to version %s", result.version)
        return {"version": result.version, "eval": result.eval_report}

    @app.post("/v1/feedback")
    def feedback(req: FeedbackRequest):
        if not req.question or not req.question.strip():
            raise HTTPException(status_code=400, detail="question must be non-empty")
        with lock:
            try:
                pending = ws.add_correction(req.question, req.intent)
            except UnknownIntentError as exc:
                raise HTTPException(status_code=422, detail=str(exc))
        return {"recorded": True, "pending": pending}

    @app.get("/v1/health")
    def health():
        snapshot = state["snapshot"]
        return {
            "status": "ok",
            "version": ws.version,
            "model_loaded": snapshot is not None,
        }

    return app
