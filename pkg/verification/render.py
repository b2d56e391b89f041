# verification/render.py
import json
from typing import List, Sequence

from jinja2 import Template

from verification.types import FAIL, PASS, VerificationReport

TEXT_FORMAT = "text"
STRUCTURED_FORMAT = "structured"
FORMATS = (TEXT_FORMAT, STRUCTURED_FORMAT)

REPORT_TEMPLATE = Template(
    """{% for r in reports -%}
{{ "✓" if r.status == "PASS" else "✗" }} {{ r.check }} [{{ r.status }}]{% if r.elapsed_ms is defined %} {{ r.elapsed_ms }} ms{% endif %}
    {{ r.eq_tag }}
    params: {% for k, v in r.params.items() %}{{ k }}={{ v }}{% if not loop.last %}, {% endif %}{% endfor %}
{%- if r.mismatch %}
    first mismatch{% if r.mismatch.where %} in {{ r.mismatch.where }}{% endif %}: {{ r.mismatch.location }} ({{ r.mismatch_count }} total)
      expected: {{ r.mismatch.expected }}
      actual:   {{ r.mismatch.actual }}
{%- endif %}
{%- for note in r.notes %}
    note: {{ note }}
{%- endfor %}
{% endfor -%}
{{ passed }}/{{ total }} checks passed
""",
    keep_trailing_newline=True,
)


def report_dicts(reports: Sequence[VerificationReport], timing: bool = True) -> List[dict]:
    return [r.to_dict(timing=timing) for r in reports]


def render_reports(reports: Sequence[VerificationReport], fmt: str = TEXT_FORMAT, timing: bool = True) -> str:
    if fmt not in FORMATS:
        raise ValueError(f"Unknown format: {fmt}. Known: {', '.join(FORMATS)}")
    items = report_dicts(reports, timing)
    if fmt == STRUCTURED_FORMAT:
        return json.dumps({"reports": items, "status": overall_status(reports)}, indent=2) + "\n"
    passed = sum(1 for r in reports if r.passed)
    return REPORT_TEMPLATE.render(reports=items, passed=passed, total=len(items))


def overall_status(reports: Sequence[VerificationReport]) -> str:
    return PASS if all(r.passed for r in reports) else FAIL


def render_object(obj: dict, fmt: str = TEXT_FORMAT) -> str:
    """Emitted data objects (seed, matrices) as JSON or as key: value lines."""
    if fmt == STRUCTURED_FORMAT:
        return json.dumps(obj, indent=2) + "\n"
    lines = []
    for key, value in obj.items():
        if isinstance(value, list) and value and isinstance(value[0], list):
            lines.append(f"{key}:")
            lines.extend("  " + "  ".join(str(x) for x in row) for row in value)
        elif isinstance(value, str) and "\n" in value:
            lines.append(f"{key}:")
            lines.extend("  " + line for line in value.splitlines())
        else:
            lines.append(f"{key}: {value}")
    return "\n".join(lines) + "\n"
