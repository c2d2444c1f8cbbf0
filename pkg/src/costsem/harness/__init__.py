"""Random program generation and the differential adequacy oracle."""

from costsem.harness.differential import (
    AdequacyReport,
    Outcome,
    Verdict,
    differential_ma,
    differential_stlc,
)
from costsem.harness.fuzz import CampaignSummary, fuzz_campaign, mutated, shrink
from costsem.harness.gen import GenConfig, gen_ma, gen_stlc
