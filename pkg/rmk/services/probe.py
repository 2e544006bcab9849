"""
Definability Probe - Search for re-verifiable undefinability certificates
"""
from typing import Iterator, Optional

import structlog
from pydantic import ValidationError

from rmk.core.kripke import SplitMix64, load_model
from rmk.core.semantics import definable_closure, truth_mask
from rmk.core.simulation import greatest_simulation, verify_simulation
from rmk.core.syntax import in_language, parse_formula
from rmk.errors import ClosureCapExceeded, ModelSchemaError
from rmk.models.formula import Formula, SimilarityType, UnaryOp
from rmk.models.kripke import KripkeModel, bits
from rmk.models.relation import Relation, SimMode
from rmk.models.report import CertificateKind, CertOfUndefinability, TrialConfig
from rmk.services.generators import trial_model
from rmk.services.registry import registry

logger = structlog.get_logger()


def probe_mode(lam: SimilarityType) -> SimMode:
    """Languages with classical negation are probed with symmetric simulations"""
    return SimMode.symmetric() if UnaryOp.NOT in lam else SimMode.plain()


def _candidates(cfg: TrialConfig) -> Iterator[tuple[str, KripkeModel]]:
    for example in registry.get_all():
        yield f"registry:{example.id}", example.model
    rng = SplitMix64(cfg.seed)
    for trial in range(cfg.trials):
        yield f"random:{cfg.seed}:{trial}", trial_model(rng.derive(trial), cfg)


def _breaking_pair(relation: Relation, target: int) -> Optional[tuple[int, int]]:
    for w, v in sorted(relation.pairs):
        if target >> w & 1 and not target >> v & 1:
            return w, v
    return None


def _simulation_certificate(
    target: Formula, lam: SimilarityType, mode: SimMode, model: KripkeModel, relation: Relation, source: str,
) -> Optional[CertOfUndefinability]:
    if relation.max_world() >= model.n_worlds:
        return None
    if not verify_simulation(model, lam, relation, mode).ok:
        return None
    pair = _breaking_pair(relation, truth_mask(model, target))
    if pair is None:
        return None
    return CertOfUndefinability(
        kind=CertificateKind.SIMULATION, target=str(target), lambda_label=lam.label,
        model=model, mode=mode, relation=relation, pair=pair, source=source,
    )


def _found(cert: CertOfUndefinability) -> CertOfUndefinability:
    logger.info("certificate_found", kind=cert.kind.value, target=cert.target, lam=cert.lambda_label, source=cert.source)
    return cert


def definability_probe(target: Formula, lam: SimilarityType, cfg: Optional[TrialConfig] = None) -> Optional[CertOfUndefinability]:
    """
    Look for a model where the truth of target is not preserved by some verified
    simulation for lam, or where the truth set of target is missing from the
    definable closure. Every registry claim is tried before any computed
    relation; then each candidate model gets its greatest simulation and its
    closure in turn.
    """
    cfg = cfg or TrialConfig()
    if in_language(target, lam):
        raise ValueError(f"{target} is already a formula of L{lam}")
    mode = probe_mode(lam)

    for example in registry.get_all():
        cert = _simulation_certificate(target, lam, mode, example.model, example.relation, f"registry:{example.id}")
        if cert is not None:
            return _found(cert)

    for source, model in _candidates(cfg):
        cert = _simulation_certificate(target, lam, mode, model, greatest_simulation(model, lam, mode), source)
        if cert is not None:
            return _found(cert)
        try:
            family = definable_closure(model, lam, cfg.closure_cap, negation=mode.is_symmetric)
        except ClosureCapExceeded:
            continue
        target_set = truth_mask(model, target)
        if target_set not in family:
            return _found(CertOfUndefinability(
                kind=CertificateKind.CLOSURE, target=str(target), lambda_label=lam.label,
                model=model, mode=mode, target_set=sorted(bits(target_set)), source=source,
            ))
    return None


def verify_certificate(cert: CertOfUndefinability, cap: Optional[int] = None) -> list[str]:
    """Re-check a certificate from its own fields; returns the problems found (empty when sound)"""
    problems = []
    target = parse_formula(cert.target)
    lam = SimilarityType.parse(cert.lambda_label)
    model = cert.model
    mask = truth_mask(model, target)
    if in_language(target, lam):
        problems.append("target is a formula of the language itself")

    if cert.kind == CertificateKind.SIMULATION:
        if cert.relation is None or cert.pair is None:
            return problems + ["simulation certificate needs a relation and a pair"]
        w, v = cert.pair
        if cert.pair not in cert.relation:
            problems.append(f"pair {list(cert.pair)} is not in the relation")
        try:
            report = verify_simulation(model, lam, cert.relation, cert.mode)
        except ValueError as e:
            return problems + [str(e)]
        if not report.ok:
            problems.append(f"relation is not a simulation: {len(report.violations)} violations")
        if not mask >> w & 1:
            problems.append(f"target is false at {w}")
        if mask >> v & 1:
            problems.append(f"target is true at {v}")
    else:
        if cert.target_set is None:
            return problems + ["closure certificate needs the target set"]
        if sorted(bits(mask)) != sorted(cert.target_set):
            problems.append("recorded target set differs from the computed truth set")
        family = definable_closure(model, lam, cap or TrialConfig().closure_cap, negation=cert.mode.is_symmetric)
        if mask in family:
            problems.append("target truth set is definable in the closure")
    return problems


def certificate_from_document(document: dict) -> CertOfUndefinability:
    """Inverse of CertOfUndefinability.to_document"""
    try:
        relation = document.get("relation")
        pair = document.get("pair")
        return CertOfUndefinability(
            kind=CertificateKind(document["kind"]),
            target=document["target"],
            lambda_label=document.get("lambda", ""),
            model=load_model(document["model"]),
            mode=SimMode.parse(document.get("mode", "plain")),
            relation=Relation.of(relation["pairs"]) if relation is not None else None,
            pair=tuple(pair) if pair is not None else None,
            target_set=document.get("target_set"),
            source=document.get("source", ""),
        )
    except (KeyError, TypeError, ValueError, ValidationError) as e:
        raise ModelSchemaError(f"malformed certificate: {e}") from e
