"""Jinja2 text rendering for command outcomes."""

from pathlib import Path

from jinja2 import Environment, FileSystemLoader, StrictUndefined
from pydantic import BaseModel

TEMPLATE_DIR = Path(__file__).resolve().parent.parent / "templates"

UNICODE_MINUS = {"T-": "T−", "C-": "C−", "F-": "F−", "I-": "I−"}


def value_set_filter(values) -> str:
    return "{" + ",".join(pretty_value(v) for v in values) + "}"


def pretty_value(value: str) -> str:
    return UNICODE_MINUS.get(value, value)


def _environment() -> Environment:
    env = Environment(
        loader=FileSystemLoader(str(TEMPLATE_DIR)),
        undefined=StrictUndefined,
        trim_blocks=True,
        lstrip_blocks=True,
        keep_trailing_newline=True,
    )
    env.filters["vset"] = value_set_filter
    env.filters["pretty"] = pretty_value
    return env


templates = _environment()


def render(template: str, document: BaseModel) -> str:
    return templates.get_template(template).render(doc=document)


def render_json(document: BaseModel) -> str:
    return document.model_dump_json(indent=2) + "\n"
