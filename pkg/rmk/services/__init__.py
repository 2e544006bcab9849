"""
Lab services for rmk
"""
from .examples import run_paper_examples
from .principles import PRINCIPLES, principle_suite
from .probe import definability_probe, verify_certificate
from .registry import ExampleRegistry, registry
from .suites import SUITES, adequacy_suite, directed_suite, hm_suite, run_suite, symmetric_suite

__all__ = [
    "run_paper_examples",
    "PRINCIPLES",
    "principle_suite",
    "definability_probe",
    "verify_certificate",
    "ExampleRegistry",
    "registry",
    "SUITES",
    "run_suite",
    "hm_suite",
    "adequacy_suite",
    "symmetric_suite",
    "directed_suite",
]
