import json
import logging
import sys
from datetime import datetime, timezone
from typing import NoReturn, Optional

import click
from flask import Flask, current_app
from flask.cli import with_appcontext

from app.repositories.report_repository import save_report
from app.services.field_queries_service import class_number_summary, \
    fsu_summary, split_summary, tower_summary
from app.services.survey_service import CONDITIONS, FORMATS, \
    format_report, run_verification, survey
from app.utilities.exceptions import error_payload

USAGE_ERROR = 2
CLAIM_FAILED = 1


def register_commands(app: Flask) -> None:
    """
    Registers the command line interface of the application.

    :param app: The Flask application.
    """

    for command in (verify_command, survey_command, fsu_command,
                    classnum_command, split_command, tower_command):
        app.cli.add_command(command)


@click.command('verify')
@click.option('--p', 'p', type=int, required=True, help='First prime.')
@click.option('--q', 'q', type=int, required=True, help='Second prime.')
@click.option('--json', 'output_format', flag_value='json',
              help='Emit the full JSON report.')
@click.option('--markdown', 'output_format', flag_value='markdown',
              help='Emit a markdown table.')
@click.option('--output', type=click.Path(dir_okay=False),
              help='Write the report to a file instead of stdout.')
@click.option('--timestamp', type=click.Choice(['on', 'off']), default='on')
@with_appcontext
def verify_command(p: int, q: int, output_format: Optional[str],
                   output: Optional[str], timestamp: str) -> None:
    """Verify every claim about the prime pair (p, q)."""
    try:
        report = run_verification(p, q)
    except (ValueError, ArithmeticError) as exception:
        __fail(exception)

    if timestamp == 'on':
        report.timestamp = __now()
    __emit(report.to_dict(), output_format or 'text', output)
    __exit_with(report.passed)


@click.command('survey')
@click.option('--bound', type=int, default=None,
              help='Largest prime, SURVEY_BOUND by default.')
@click.option('--cond', 'condition', type=click.Choice(CONDITIONS),
              default='both')
@click.option('--jobs', type=int, default=None,
              help='Worker processes, SURVEY_JOBS by default.')
@click.option('--format', 'output_format', type=click.Choice(FORMATS),
              default='text')
@click.option('--output', type=click.Path(dir_okay=False))
@click.option('--timestamp', type=click.Choice(['on', 'off']), default='on')
@with_appcontext
def survey_command(bound: Optional[int], condition: str, jobs: Optional[int],
                   output_format: str, output: Optional[str],
                   timestamp: str) -> None:
    """Verify all qualifying pairs with p, q up to a bound."""
    try:
        result = survey(bound or current_app.config['SURVEY_BOUND'],
                        condition, jobs)
    except (ValueError, ArithmeticError) as exception:
        __fail(exception)

    document = result.to_dict()
    if timestamp == 'on':
        document['timestamp'] = __now()
    __emit(document, output_format, output)
    __exit_with(result.passed)


@click.command('fsu')
@click.option('--radicands', required=True,
              help='Comma separated radicands, e.g. 2,5,31.')
@with_appcontext
def fsu_command(radicands: str) -> None:
    """Compute a fundamental system of units by Wada's descent."""
    try:
        summary = fsu_summary([int(value) for value in radicands.split(',')])
    except (ValueError, ArithmeticError) as exception:
        __fail(exception)
    __emit(summary, 'json', None)


@click.command('classnum')
@click.option('--d', 'd', type=int, required=True)
@with_appcontext
def classnum_command(d: int) -> None:
    """Compute the class group and fundamental unit of Q(sqrt(d))."""
    try:
        summary = class_number_summary(d)
    except (ValueError, ArithmeticError) as exception:
        __fail(exception)
    __emit(summary, 'json', None)


@click.command('split')
@click.option('--p', 'prime', type=int, required=True)
@click.option('--level', type=int, required=True)
@click.option('--plus', is_flag=True,
              help='Use the maximal real subfield.')
@with_appcontext
def split_command(prime: int, level: int, plus: bool) -> None:
    """Decompose p in Q(zeta_(2^(n+2))) or its real subfield."""
    try:
        summary = split_summary(prime, level, plus)
    except (ValueError, ArithmeticError) as exception:
        __fail(exception)
    __emit(summary, 'json', None)


@click.command('tower')
@click.option('--p', 'p', type=int, required=True)
@click.option('--q', 'q', type=int, required=True)
@click.option('--levels', type=int, default=None,
              help='Number of layers, TOWER_LEVELS by default.')
@with_appcontext
def tower_command(p: int, q: int, levels: Optional[int]) -> None:
    """Show the splitting of p through the layers F_n and F_n+."""
    try:
        summary = tower_summary(
                p, q, levels or current_app.config['TOWER_LEVELS'])
    except (ValueError, ArithmeticError) as exception:
        __fail(exception)
    __emit(summary, 'json', None)


def __emit(document: dict, output_format: str,
           output: Optional[str]) -> None:
    content = format_report(document, output_format)
    if output is None:
        click.echo(content, nl=False)
        return
    try:
        path = save_report(content, output,
                           current_app.config['REPORT_DIR'])
    except OSError as exception:
        __fail(exception)
    __secho(f'Report written to {path}.', 'green')


def __fail(exception: Exception) -> NoReturn:
    payload = error_payload(exception)
    logging.error(str(payload))
    __secho(json.dumps(payload, sort_keys=True), 'red', err=True)
    sys.exit(USAGE_ERROR)


def __exit_with(passed: bool) -> None:
    if not passed:
        __secho('Some claims failed.', 'red', err=True)
        sys.exit(CLAIM_FAILED)


def __secho(message: str, colour: str, err: bool = False) -> None:
    if current_app.config.get('NO_COLOR'):
        click.echo(message, err=err)
    else:
        click.secho(message, fg=colour, err=err)


def __now() -> str:
    return datetime.now(timezone.utc).isoformat(timespec='seconds')
