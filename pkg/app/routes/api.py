"""JSON API mirroring the command-line subcommands."""

import logging
from typing import Optional

from fastapi import APIRouter, Request
from fastapi.concurrency import run_in_threadpool

from app.cli import commands
from app.config import Settings
from app.models import (
    CheckReportDocument,
    DerivationDocument,
    EvalReport,
    EvalRequest,
    ParseReport,
    TablesDocument,
    TruthtableReport,
    TruthtableRequest,
    ValidReport,
    ValidRequest,
)
from app.nmatrix import get_system, system_names

logger = logging.getLogger(__name__)

router = APIRouter(prefix="/api")


def _settings(request: Request) -> Settings:
    return request.app.state.settings


def _system(request: Request, name, quantifier):
    settings = _settings(request)
    return get_system(name or settings.system, quantifier or settings.quantifier)


@router.get("/health")
async def health_check(request: Request):
    """Basic health check endpoint."""
    settings = _settings(request)
    return {"status": "healthy", "systems": system_names(), "default_system": settings.system}


@router.get("/parse", response_model=ParseReport)
async def parse(formula: str):
    return commands.run_parse(formula).document


@router.get("/tables/{system}", response_model=TablesDocument)
async def get_tables(system: str, request: Request, quantifier: Optional[str] = None):
    """Multioperations and quantifier folds of one system."""
    return commands.run_tables(_system(request, system, quantifier)).document


@router.post("/truthtable", response_model=TruthtableReport)
async def truthtable(body: TruthtableRequest, request: Request):
    sys = _system(request, body.system, body.quantifier)
    outcome = await run_in_threadpool(commands.run_truthtable, body.formula, sys, body.premises, body.limit)
    return outcome.document


@router.post("/eval", response_model=EvalReport)
async def evaluate(body: EvalRequest, request: Request):
    sys = _system(request, body.system, body.quantifier)
    budget = _settings(request).budget
    outcome = await run_in_threadpool(commands.run_eval, body.formula, body.structure, sys, body.prefer, budget)
    return outcome.document


@router.post("/valid", response_model=ValidReport)
async def valid(body: ValidRequest, request: Request):
    """Bounded countermodel search; budget exhaustion is a verdict, not an error."""
    settings = _settings(request)
    sys = _system(request, body.system, body.quantifier)
    max_domain = body.max_domain or settings.max_domain
    budget = body.budget or settings.budget
    logger.info(f"🔍 Searching countermodels for {body.formula} in {sys.label} up to size {max_domain}")
    outcome = await run_in_threadpool(commands.run_valid, body.formula, sys, max_domain, budget, 1)
    return outcome.document


@router.post("/check-proof", response_model=CheckReportDocument)
async def check_proof(body: DerivationDocument):
    outcome = await run_in_threadpool(commands.run_check_proof, body, body.system_spec())
    return outcome.document
