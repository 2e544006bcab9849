"""
rmk - Command-line front-end

Every command prints one JSON document on stdout (sorted keys, sorted pair
lists). Exit codes: 0 success, 1 a check failed, 2 usage or input error.
"""
import json
import sys
from pathlib import Path
from typing import Any, Callable, Optional

import click
import structlog

from rmk.config import RmkConfig
from rmk.core.kripke import dump_model, load_model_file, model_to_dot, random_model
from rmk.core.semantics import definable_closure, satisfies, sequent_valid, subsumption, truth_set
from rmk.core.simulation import greatest_simulation, verify_simulation, witness_formula
from rmk.core.syntax import parse_formula, parse_sequent
from rmk.core.translation import fol_eval, standard_translation
from rmk.errors import RmkError
from rmk.log import configure_logging
from rmk.models.fol import X
from rmk.models.formula import Formula, SimilarityType
from rmk.models.kripke import KripkeModel
from rmk.models.relation import Relation, SimMode
from rmk.models.report import TrialConfig
from rmk.services.examples import run_paper_examples
from rmk.services.principles import principle_suite
from rmk.services.probe import certificate_from_document, definability_probe, probe_mode, verify_certificate
from rmk.services.suites import SUITES, run_suite

logger = structlog.get_logger()

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class CheckFailed(click.ClickException):
    """A command whose check ran but did not pass; its document is already on stdout"""
    exit_code = EXIT_FAILED

    def __init__(self):
        super().__init__("check failed")

    def show(self, file=None) -> None:
        pass


class InputError(click.ClickException):
    """Library errors surface as a JSON error document"""
    exit_code = EXIT_USAGE

    def __init__(self, error: Exception):
        super().__init__(str(error))
        self.kind = type(error).__name__

    def show(self, file=None) -> None:
        click.echo(json.dumps({"error": self.kind, "message": self.message}, sort_keys=True))


class RmkGroup(click.Group):
    def invoke(self, ctx: click.Context) -> Any:
        try:
            return super().invoke(ctx)
        except (RmkError, ValueError) as e:
            logger.error("command_failed", error=type(e).__name__, message=str(e))
            raise InputError(e) from e


def _emit(document: Any, pretty: bool = False, table: Optional[Callable[[], str]] = None) -> None:
    if pretty and table is not None:
        click.echo(table())
    else:
        click.echo(json.dumps(document, sort_keys=True, indent=2 if pretty else None, ensure_ascii=False))


def _lambda(text: str) -> SimilarityType:
    try:
        return SimilarityType.parse(text)
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint="--lambda")


def _mode(text: str) -> SimMode:
    try:
        return SimMode.parse(text)
    except ValueError as e:
        raise click.BadParameter(str(e), param_hint="--mode")


def _formula(text: Optional[str], path: Optional[str]) -> Formula:
    if path:
        text = Path(path).read_text()
    if text is None:
        raise click.UsageError("give a formula with --formula or --formula-file")
    return parse_formula(text.strip())


def _relation(path: str) -> Relation:
    try:
        document = json.loads(Path(path).read_text())
        return Relation.of(tuple(pair) for pair in document["pairs"])
    except (KeyError, TypeError, ValueError) as e:
        raise click.BadParameter(f"relation file must hold {{\"pairs\": [[w, v], ...]}}: {e}", param_hint="--relation")


def _relation_document(model: KripkeModel, relation: Relation, lam: SimilarityType, mode: SimMode, dot: bool) -> dict:
    document = {"lambda": lam.label, "mode": mode.label, **relation.to_document()}
    if dot:
        document["dot"] = model_to_dot(model, relation.pairs)
    return document


model_option = click.option("--model", "model_path", required=True, type=click.Path(exists=True, dir_okay=False),
                            help="Model JSON file")
lambda_option = click.option("--lambda", "lam_text", default="", help="Comma list of operators, e.g. smile,con")
mode_option = click.option("--mode", "mode_text", default="plain", help="plain | symmetric | ablated:<ops>")
formula_options = [
    click.option("--formula", "formula_text", default=None, help="Formula text"),
    click.option("--formula-file", default=None, type=click.Path(exists=True, dir_okay=False), help="File holding a formula"),
]


def with_formula(fn):
    for option in reversed(formula_options):
        fn = option(fn)
    return fn


def trial_options(fn):
    for option in reversed([
        click.option("--seed", type=int, default=None, help="Base seed (default RMK_SEED)"),
        click.option("--trials", type=int, default=100, show_default=True),
        click.option("--max-worlds", type=int, default=6, show_default=True),
        click.option("--max-letters", type=int, default=2, show_default=True),
        click.option("--depth", type=int, default=5, show_default=True),
        click.option("--jobs", type=int, default=None, help="Worker processes (default RMK_JOBS)"),
    ]):
        fn = option(fn)
    return fn


def _trial_config(ctx: click.Context, seed, trials, max_worlds, max_letters, depth, jobs) -> TrialConfig:
    config: RmkConfig = ctx.obj["config"]
    return TrialConfig(
        seed=config.seed if seed is None else seed,
        trials=trials,
        max_worlds=max_worlds,
        max_letters=max_letters,
        depth=depth,
        jobs=config.jobs if jobs is None else jobs,
        closure_cap=config.closure_cap,
        exhaustive_worlds=config.exhaustive_worlds,
    )


@click.group(cls=RmkGroup)
@click.option("--pretty", is_flag=True, help="Human-readable output")
@click.pass_context
def cli(ctx: click.Context, pretty: bool):
    """Restorative modal logic toolkit"""
    config = RmkConfig.from_env()
    configure_logging(config.log_level, config.log_json)
    ctx.ensure_object(dict)
    ctx.obj["config"] = config
    ctx.obj["pretty"] = pretty


# =============================================================================
# Semantics
# =============================================================================

@cli.command()
@model_option
@with_formula
@click.option("--world", type=int, required=True)
@click.pass_context
def check(ctx, model_path, formula_text, formula_file, world):
    """Does the formula hold at a world"""
    model = load_model_file(model_path)
    phi = _formula(formula_text, formula_file)
    holds = satisfies(model, world, phi)
    _emit({"formula": str(phi), "world": world, "holds": holds}, ctx.obj["pretty"],
          lambda: f"{world} {'|=' if holds else '|/='} {phi}")


@cli.command()
@model_option
@with_formula
@click.pass_context
def truthset(ctx, model_path, formula_text, formula_file):
    """Worlds where the formula holds"""
    model = load_model_file(model_path)
    phi = _formula(formula_text, formula_file)
    worlds = sorted(truth_set(model, phi))
    _emit({"formula": str(phi), "truth_set": worlds}, ctx.obj["pretty"], lambda: f"[[{phi}]] = {worlds}")


@cli.command()
@model_option
@lambda_option
@click.option("--negation", is_flag=True, help="Close under complement as well")
@click.pass_context
def closure(ctx, model_path, lam_text, negation):
    """Every set definable in the language on the model"""
    family = definable_closure(load_model_file(model_path), _lambda(lam_text), ctx.obj["config"].closure_cap, negation)
    _emit(family.to_document(), ctx.obj["pretty"])


@cli.command()
@model_option
@lambda_option
@click.option("--dot", is_flag=True, help="Add a Graphviz rendering")
@click.pass_context
def subsume(ctx, model_path, lam_text, dot):
    """Subsumption relation read off the definable closure"""
    model = load_model_file(model_path)
    lam = _lambda(lam_text)
    relation = subsumption(model, lam, ctx.obj["config"].closure_cap)
    _emit(_relation_document(model, relation, lam, SimMode.plain(), dot), ctx.obj["pretty"])


@cli.command()
@click.option("--sequent", "sequent_text", required=True, help="Sequent such as 'p0, con p0 |- '")
@click.option("--seed", type=int, default=None)
@click.option("--trials", type=int, default=100, show_default=True)
@click.pass_context
def sequent(ctx, sequent_text, seed, trials):
    """Local validity by exhaustive small models then seeded random ones"""
    config: RmkConfig = ctx.obj["config"]
    search = TrialConfig(seed=config.seed if seed is None else seed, trials=trials,
                         exhaustive_worlds=config.exhaustive_worlds)
    verdict = sequent_valid(parse_sequent(sequent_text), search=search)
    _emit({"sequent": sequent_text, **verdict.to_document()}, ctx.obj["pretty"])


# =============================================================================
# Simulations
# =============================================================================

@cli.command("sim-greatest")
@model_option
@lambda_option
@mode_option
@click.option("--dot", is_flag=True, help="Add a Graphviz rendering")
@click.pass_context
def sim_greatest(ctx, model_path, lam_text, mode_text, dot):
    """Greatest simulation for the similarity type"""
    model = load_model_file(model_path)
    lam, mode = _lambda(lam_text), _mode(mode_text)
    relation = greatest_simulation(model, lam, mode)
    _emit(_relation_document(model, relation, lam, mode, dot), ctx.obj["pretty"])


@cli.command("sim-verify")
@model_option
@lambda_option
@mode_option
@click.option("--relation", "relation_path", required=True, type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def sim_verify(ctx, model_path, lam_text, mode_text, relation_path):
    """List every violated condition of a candidate relation"""
    report = verify_simulation(load_model_file(model_path), _lambda(lam_text), _relation(relation_path), _mode(mode_text))
    _emit(report.to_document(), ctx.obj["pretty"])
    if not report.ok:
        raise CheckFailed()


@cli.command()
@model_option
@lambda_option
@click.option("--pair", nargs=2, type=int, required=True, help="Worlds w v")
@click.pass_context
def witness(ctx, model_path, lam_text, pair):
    """A formula true at w and false at v, or null when v simulates w"""
    w, v = pair
    phi = witness_formula(load_model_file(model_path), _lambda(lam_text), w, v)
    _emit({"pair": [w, v], "similar": phi is None, "formula": None if phi is None else str(phi)}, ctx.obj["pretty"])


# =============================================================================
# Translation
# =============================================================================

@cli.command()
@with_formula
@click.pass_context
def translate(ctx, formula_text, formula_file):
    """Standard translation with free variable x"""
    phi = _formula(formula_text, formula_file)
    alpha = standard_translation(phi)
    _emit({"formula": str(phi), "fol": str(alpha)}, ctx.obj["pretty"], lambda: str(alpha))


@cli.command("st-check")
@model_option
@with_formula
@click.option("--world", type=int, required=True)
@click.pass_context
def st_check_command(ctx, model_path, formula_text, formula_file, world):
    """Compare modal truth with first-order truth of the translation"""
    model = load_model_file(model_path)
    phi = _formula(formula_text, formula_file)
    modal = satisfies(model, world, phi)
    first_order = fol_eval(model, standard_translation(phi), {X: world})
    _emit({"formula": str(phi), "world": world, "modal": modal, "fol": first_order, "agree": modal == first_order},
          ctx.obj["pretty"])
    if modal != first_order:
        raise CheckFailed()


# =============================================================================
# Lab
# =============================================================================

@cli.command()
@click.option("--worlds", type=int, required=True)
@click.option("--letters", type=int, default=1, show_default=True)
@click.option("--edge-prob", type=float, default=0.35, show_default=True)
@click.option("--letter-prob", type=float, default=0.5, show_default=True)
@click.option("--seed", type=int, default=None)
@click.option("--dot", is_flag=True, help="Print Graphviz instead of JSON")
@click.pass_context
def gen(ctx, worlds, letters, edge_prob, letter_prob, seed, dot):
    """Seeded random model"""
    try:
        model = random_model(worlds, letters, edge_prob, letter_prob, ctx.obj["config"].seed if seed is None else seed)
    except ValueError as e:
        raise click.BadParameter(str(e))
    click.echo(model_to_dot(model) if dot else dump_model(model))


@cli.command()
@click.argument("name", type=click.Choice(sorted(SUITES)))
@trial_options
@click.pass_context
def suite(ctx, name, seed, trials, max_worlds, max_letters, depth, jobs):
    """Run a seeded property suite"""
    report = run_suite(name, _trial_config(ctx, seed, trials, max_worlds, max_letters, depth, jobs))
    _emit(report.to_document(), ctx.obj["pretty"], lambda: (
        f"{report.suite}: {report.passed}/{report.trials} trials passed, "
        f"{report.skipped} skipped, {report.checks} checks, {len(report.failures)} failures"
    ))
    if not report.ok:
        raise CheckFailed()


@cli.command()
@click.pass_context
def examples(ctx):
    """Replay the worked examples"""
    report = run_paper_examples()

    def table() -> str:
        lines = []
        for example in report.examples:
            for assertion in example.assertions:
                lines.append(f"{'PASS' if assertion.passed else 'FAIL'}  {example.example:<14} {assertion.name}")
        return "\n".join(lines)

    _emit(report.to_document(), ctx.obj["pretty"], table)
    if not report.ok:
        raise CheckFailed()


@cli.command()
@click.option("--name", "names", multiple=True, help="Only these principles")
@click.option("--seed", type=int, default=None)
@click.option("--trials", type=int, default=100, show_default=True)
@click.pass_context
def principles(ctx, names, seed, trials):
    """Check the consequence principles and opposition squares"""
    config: RmkConfig = ctx.obj["config"]
    search = TrialConfig(seed=config.seed if seed is None else seed, trials=trials,
                         exhaustive_worlds=config.exhaustive_worlds)
    report = principle_suite(search, list(names) or None)

    def table() -> str:
        return "\n".join(
            f"{'PASS' if r.passed else 'FAIL'}  {r.principle.name:<13} {r.principle.expect.value:<9} {r.principle.sequent}"
            for r in report.results
        )

    _emit(report.to_document(), ctx.obj["pretty"], table)
    if not report.ok:
        raise CheckFailed()


@cli.command()
@click.option("--target", "target_text", required=True, help="Formula outside the language")
@lambda_option
@trial_options
@click.pass_context
def probe(ctx, target_text, lam_text, seed, trials, max_worlds, max_letters, depth, jobs):
    """Search for an undefinability certificate"""
    lam = _lambda(lam_text)
    cfg = _trial_config(ctx, seed, trials, max_worlds, max_letters, depth, jobs)
    cert = definability_probe(parse_formula(target_text), lam, cfg)
    _emit({"target": target_text, "lambda": lam.label, "mode": probe_mode(lam).label,
           "certificate": None if cert is None else cert.to_document()}, ctx.obj["pretty"])
    if cert is None:
        raise CheckFailed()


@cli.command("cert-verify")
@click.argument("path", type=click.Path(exists=True, dir_okay=False))
@click.pass_context
def cert_verify(ctx, path):
    """Re-check a certificate from its JSON alone"""
    try:
        document = json.loads(Path(path).read_text())
    except json.JSONDecodeError as e:
        raise click.BadParameter(f"not JSON: {e}", param_hint="PATH")
    problems = verify_certificate(certificate_from_document(document), ctx.obj["config"].closure_cap)
    _emit({"ok": not problems, "problems": problems}, ctx.obj["pretty"])
    if problems:
        raise CheckFailed()


def main(argv: Optional[list[str]] = None) -> int:
    """Run the CLI and return its exit code"""
    try:
        result = cli.main(args=argv, prog_name="rmk", standalone_mode=False)
    except click.ClickException as e:
        e.show()
        return e.exit_code
    except click.exceptions.Abort:
        return EXIT_USAGE
    return result if isinstance(result, int) else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
