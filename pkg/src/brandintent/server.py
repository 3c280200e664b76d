"""Read-only HTTP facade over scored cohort snapshots.

The store maps brand -> immutable scored cohort; replacement swaps the whole
mapping so concurrent readers see either the old cohort or the new one,
never a mix. All errors render as {"error": <message>}.
"""

from __future__ import annotations

import os
from typing import Optional, Sequence

from fastapi import FastAPI
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .corpus import ALL_DIMENSIONS
from .engine import (
    ScoredUser,
    distributions,
    filter_users,
    parse_filter_spec,
    scored_user_to_dict,
    user_detail,
)

MODES = ("ica", "independent")


class SnapshotStore:
    """Brand -> scored cohort, with atomic whole-mapping replacement."""

    def __init__(self):
        self._cohorts: dict[str, tuple[ScoredUser, ...]] = {}

    def replace(self, brand: str, cohort: Sequence[ScoredUser]) -> None:
        updated = dict(self._cohorts)
        updated[brand] = tuple(cohort)
        self._cohorts = updated

    def get(self, brand: str) -> Optional[tuple[ScoredUser, ...]]:
        return self._cohorts.get(brand)

    def brands(self) -> list[str]:
        return sorted(self._cohorts)


def _error(status: int, message: str) -> JSONResponse:
    return JSONResponse(status_code=status, content={"error": message})


def create_app(
    store: SnapshotStore, default_bins: int = 5, static_dir: Optional[str] = None
) -> FastAPI:
    app = FastAPI(title="brandintent", docs_url=None, redoc_url=None)

    @app.exception_handler(RequestValidationError)
    async def _on_validation_error(request, exc):
        return _error(400, str(exc.errors()[0].get("msg", "invalid request")))

    @app.get("/api/v1/health")
    def health():
        return {"status": "ok", "brands": store.brands()}

    @app.get("/api/v1/brands/{brand}/distributions")
    def get_distributions(brand: str, mode: str = "ica", bins: Optional[int] = None):
        cohort = store.get(brand)
        if cohort is None:
            return _error(404, f"unknown brand {brand!r}")
        if mode not in MODES:
            return _error(400, f"unknown mode {mode!r}")
        n_bins = default_bins if bins is None else bins
        if n_bins < 1:
            return _error(400, "bins must be >= 1")
        hists = distributions(cohort, n_bins, mode)
        return {
            "brand": brand,
            "mode": mode,
            "bins": n_bins,
            "users": len(cohort),
            "distributions": {
                d.value: {
                    "bin_edges": list(h.bin_edges),
                    "counts": list(h.counts),
                }
                for d, h in hists.items()
            },
        }

    @app.get("/api/v1/brands/{brand}/users")
    def get_users(
        brand: str, filters: str = "", mode: str = "ica", limit: Optional[int] = None
    ):
        cohort = store.get(brand)
        if cohort is None:
            return _error(404, f"unknown brand {brand!r}")
        if mode not in MODES:
            return _error(400, f"unknown mode {mode!r}")
        if limit is not None and limit < 0:
            return _error(400, "limit must be >= 0")
        try:
            spec = parse_filter_spec(filters)
        except (ValueError, KeyError) as exc:
            return _error(400, f"bad filters: {exc}")
        matched = filter_users(cohort, spec, mode)
        shown = matched if limit is None else matched[:limit]
        return {
            "brand": brand,
            "mode": mode,
            "filters": spec.to_query(),
            "total": len(matched),
            "users": [
                {
                    "user_id": u.user_id,
                    "profile": dict(u.profile),
                    "scores": {d.value: u.scores_for(mode)[d] for d in ALL_DIMENSIONS},
                    "n_relevant_tweets": len(u.relevant_tweets),
                }
                for u in shown
            ],
        }

    @app.get("/api/v1/brands/{brand}/users/{user_id}")
    def get_user(brand: str, user_id: str):
        cohort = store.get(brand)
        if cohort is None:
            return _error(404, f"unknown brand {brand!r}")
        try:
            user = user_detail(cohort, user_id)
        except LookupError as exc:
            return _error(404, str(exc))
        return scored_user_to_dict(user)

    if static_dir and os.path.isdir(static_dir):
        app.mount("/ui", StaticFiles(directory=static_dir, html=True), name="ui")

    return app
