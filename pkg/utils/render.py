"""Text tables and versioned JSON documents for every command."""

from __future__ import annotations

import json
from typing import Sequence

from algorithms.monodromy import verify as verify_branch_data
from core import config as cfg
from model.covering import BranchData, BranchVerification
from model.lattice import Classification, PairWitness, SublatticeEmbedding
from model.manifold import ClassWitness, CoveringPlan, FeasibilityReport, ManifoldInvariants


def dumps(document: dict) -> str:
    return json.dumps(document, indent=2)


def _vec(coords: Sequence[int]) -> str:
    return "(" + ",".join(str(x) for x in coords) + ")"


def witness_summary(witness) -> str:
    if witness is None:
        return "-"
    if isinstance(witness, ClassWitness):
        return f"phi={_vec(witness.phi.coords)} phi.phi={witness.sign * witness.d}"
    if isinstance(witness, PairWitness):
        return f"phi1={_vec(witness.phi1.coords)} phi2={_vec(witness.phi2.coords)} n={witness.n} d={witness.d}"
    if isinstance(witness, SublatticeEmbedding):
        diag = [witness.target_gram[i][i] for i in range(len(witness.target_gram))]
        return f"{len(witness.generators)} generators, Gram diag{_vec(diag)}"
    return f"{len(witness)} orthogonal pairs, d={witness[0].d}" if witness else "-"


def _feasible_text(value: bool | None) -> str:
    return {True: "yes", False: "no", None: "undetermined"}[value]


def _table(header: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [max(len(str(r[i])) for r in [header, *rows]) for i in range(len(header))]
    lines = ["  ".join(str(c).ljust(w) for c, w in zip(header, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines.extend("  ".join(str(c).ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows)
    return "\n".join(lines)


def report_table(reports: Sequence[FeasibilityReport], embedded: bool = False) -> str:
    role = "embedded" if embedded else "immersed"
    header = ("base", "feasible", "immersed d", "embedded d", f"{role} witness", "caveats")
    rows = []
    for r in reports:
        rows.append(
            (
                r.base.label,
                _feasible_text(r.feasible),
                "-" if r.immersed_degree is None else str(r.immersed_degree),
                "-" if r.embedded_degree is None else str(r.embedded_degree),
                witness_summary(r.witness(role)),
                "; ".join(r.caveats) or "-",
            )
        )
    return _table(header, rows)


def report_document(inv: ManifoldInvariants, reports: Sequence[FeasibilityReport]) -> dict:
    return {
        "schema": cfg.REPORT_SCHEMA,
        "input": inv.to_json(),
        "signature": [inv.form.signature_pos, inv.form.signature_neg],
        "parity": inv.form.parity,
        "reports": [r.to_dict(inv.form) for r in reports],
    }


def classification_document(classification: Classification) -> dict:
    return {"schema": cfg.CLASSIFICATION_SCHEMA, **classification.to_json()}


def classification_text(classification: Classification) -> str:
    form = classification.form
    lines = [
        f"kind: {classification.kind.value}",
        f"rank {form.rank}, signature ({form.signature_pos},{form.signature_neg}), {form.parity}",
        f"layout: {classification.layout.to_json()}",
        "change of basis (columns are the canonical basis in input coordinates):",
    ]
    lines.extend("  " + " ".join(f"{x:>4}" for x in row) for row in classification.change.matrix)
    lines.append("canonical form:")
    lines.extend("  " + " ".join(f"{x:>4}" for x in row) for row in classification.canonical.entries)
    lines.extend(f"note: {d}" for d in classification.diagnostics)
    return "\n".join(lines)


def branch_document(data: BranchData, check: BranchVerification | None = None) -> dict:
    check = check or verify_branch_data(data)
    return {"schema": cfg.BRANCH_SCHEMA, **data.to_json(), "verification": check.to_json()}


def branch_text(data: BranchData, check: BranchVerification | None = None) -> str:
    check = check or verify_branch_data(data)
    lines = [str(data), f"points: {len(data)}", f"product: {check.product}", f"orbit of sheet 1: {list(check.orbit)}"]
    lines.append("ok" if check.ok else f"violation: {check.violation}")
    return "\n".join(lines)


def plan_text(plan: CoveringPlan) -> str:
    if not plan.covered:
        return "\n".join([f"{plan.kind}: not covered", *plan.notes])
    branch = "embedded" if plan.embedded_branch else "immersed"
    lines = [f"{plan.kind}: {plan.target}, d = {plan.degree}, branch {branch}"]
    lines.extend(f"  {k} = {v}" for k, v in plan.parameters)
    lines.extend(f"  {label}: {data}" for label, data in plan.branch_data)
    lines.extend(f"  {n}" for n in plan.notes)
    for v in plan.variants:
        lines.append("variant " + plan_text(v).replace("\n", "\n  "))
    return "\n".join(lines)
