from __future__ import annotations

import os
from dataclasses import dataclass

from dotenv import load_dotenv

load_dotenv()


@dataclass(frozen=True)
class Settings:
    max_alternatives: int
    max_single_crossing_orders: int
    max_enumeration_n: int
    workers: int


def load_settings() -> Settings:
    """Read guards and worker counts from the environment (or `.env`)."""
    return Settings(
        max_alternatives=int(os.getenv("CONDORCET_MAX_ALTERNATIVES", "7")),
        max_single_crossing_orders=int(os.getenv("CONDORCET_MAX_SINGLE_CROSSING_ORDERS", "10")),
        max_enumeration_n=int(os.getenv("CONDORCET_MAX_ENUMERATION_N", "4")),
        workers=max(1, int(os.getenv("CONDORCET_WORKERS", "1"))),
    )
