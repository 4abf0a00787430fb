"""Application configuration and startup logic."""

import os
import logging
import logging.config
from contextlib import asynccontextmanager
from typing import Optional

from dotenv import load_dotenv
from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse
from pydantic import BaseModel, Field, ValidationError

from app.nmatrix import QuantifierMode, get_system, system_names
from app.semantics import DEFAULT_BUDGET, BudgetExhausted

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)-7s [%(name)s] %(message)s"


class Settings(BaseModel):
    """Defaults shared by the CLI and the HTTP API."""

    system: str = "tm"
    quantifier: str = QuantifierMode.DETERMINISTIC.value
    max_domain: int = Field(3, ge=1)
    budget: Optional[int] = Field(DEFAULT_BUDGET, ge=1)
    seed: int = 0
    jobs: int = Field(1, ge=1)
    trials: int = Field(1000, ge=1)
    api_host: str = "127.0.0.1"
    api_port: int = 8000


_ENV_FIELDS = {
    "NMATRIX_SYSTEM": "system",
    "NMATRIX_QUANTIFIER": "quantifier",
    "NMATRIX_MAX_DOMAIN": "max_domain",
    "NMATRIX_BUDGET": "budget",
    "NMATRIX_SEED": "seed",
    "NMATRIX_JOBS": "jobs",
    "NMATRIX_TRIALS": "trials",
    "NMATRIX_API_HOST": "api_host",
    "NMATRIX_API_PORT": "api_port",
}


def load_settings() -> Settings:
    """Read settings from the environment (and a .env file if present).

    Raises:
        ValueError: a variable is malformed or names an unknown system.
    """
    load_dotenv()
    raw = {field: os.environ[var] for var, field in _ENV_FIELDS.items() if os.getenv(var)}
    try:
        settings = Settings(**raw)
    except ValidationError as e:
        raise ValueError(f"invalid environment configuration: {e}") from e
    # fail early on a bad system or quantifier name
    get_system(settings.system, settings.quantifier)
    return settings


def configure_logging(level: Optional[str] = None):
    """Configure logging from logging.conf, or at NMATRIX_LOG_LEVEL (LOG_LEVEL) on the app loggers."""
    if os.path.exists("logging.conf"):
        logging.config.fileConfig("logging.conf", disable_existing_loggers=False)
        return
    name = (level or os.getenv("NMATRIX_LOG_LEVEL") or os.getenv("LOG_LEVEL") or "INFO").upper()
    level_value = getattr(logging, name, logging.INFO)
    logging.basicConfig(format=LOG_FORMAT)
    # only the app.* loggers follow the configured level
    logging.getLogger("app").setLevel(level_value)


@asynccontextmanager
async def lifespan(app: FastAPI):
    """Application lifespan manager."""
    settings: Settings = app.state.settings
    logger.info(f"🚀 Nmatrix API started (default system {settings.system}, quantifiers {settings.quantifier})")
    logger.info(f"📚 Available systems: {', '.join(system_names())}")
    yield
    logger.info("Application shutdown complete")


def create_exception_handlers(app: FastAPI):
    """Map library errors onto HTTP responses."""

    @app.exception_handler(BudgetExhausted)
    async def budget_exception_handler(request: Request, exc: BudgetExhausted):
        logger.warning(f"⏱️ Budget exhausted on {request.url.path} after {exc.steps} steps")
        return JSONResponse(status_code=422, content={"detail": str(exc), "verdict": "budget-exhausted"})

    @app.exception_handler(ValueError)
    async def value_exception_handler(request: Request, exc: ValueError):
        # ParseError, SignatureError, StructureError and CarrierError all land here
        logger.info(f"❌ Rejected request to {request.url.path}: {exc}")
        return JSONResponse(status_code=400, content={"detail": str(exc)})


def create_app(settings: Optional[Settings] = None) -> FastAPI:
    """Create and configure the FastAPI application."""
    # Load environment variables
    load_dotenv()

    # Configure logging
    configure_logging()

    app = FastAPI(
        title="Nmatrix Modal Logic API",
        description="Evaluation, countermodel search and proof checking for non-normal modal systems",
        version="1.0.0",
        lifespan=lifespan,
    )
    app.state.settings = settings or load_settings()

    create_exception_handlers(app)

    from app.routes import api

    app.include_router(api.router, tags=["API"])
    return app
