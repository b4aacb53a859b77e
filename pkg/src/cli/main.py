# %%
"""wbanzhaf: interaction indexes, best k-approximations and the identity suite."""
import argparse
import logging
import sys
from pathlib import Path
from typing import List, Optional

from omegaconf import DictConfig, OmegaConf

from src.cli import reports
from src.data.game_io import document_from_approximation, load_document, parse_profile, save_document
from src.games.core import Coalition, cardinalities, coalition, mobius
from src.models.analysis import r_squared
from src.models.approximation import best_approximation, check_degree, residual_norm
from src.models.indexes import (
    BANZHAF,
    MOBIUS,
    SHAPLEY,
    WEIGHTED_BANZHAF,
    InteractionTable,
    banzhaf_all,
    shapley_interaction_all,
    weighted_banzhaf_all,
)
from src.models.verification import run_suite
from src.utils.exceptions import ConstantGameError, GameValidationError, ProfileError
from src.utils.utils import parse_players

log = logging.getLogger(__name__)

CONFIG_PATH = Path(__file__).resolve().parent.parent / "configs" / "cli.yaml"

EXIT_OK = 0
EXIT_INPUT = 2
EXIT_PROFILE = 3
EXIT_IO = 4
EXIT_VERIFY = 5

FAMILIES = [WEIGHTED_BANZHAF, BANZHAF, SHAPLEY, MOBIUS]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wbanzhaf", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--game", required=True, help="game document (JSON)")
    common.add_argument("--p", help="profile: one probability, or one per player separated by commas")
    common.add_argument("--format", choices=[reports.JSON, reports.CSV])

    index = sub.add_parser("index", parents=[common], help="interaction index of every coalition")
    index.add_argument("--family", choices=FAMILIES)
    index.add_argument("--max-order", type=int, help="largest coalition size reported (default n)")
    index.add_argument("--coalition", help='report a single coalition, e.g. "2,3"')

    approx = sub.add_parser("approx", parents=[common], help="best degree-k approximation")
    approx.add_argument("--k", type=int, required=True)
    approx.add_argument("--out", required=True, help="where the Mobius document of f_k is written")

    verify = sub.add_parser("verify", parents=[common], help="run the identity suite")
    verify.add_argument("--seed", type=int)
    verify.add_argument("--errors", action="store_true", help="include the max error of every identity")
    return parser


def load_config(args: argparse.Namespace) -> DictConfig:
    """cli.yaml defaults overridden by the flags that were given"""
    cfg = OmegaConf.load(CONFIG_PATH)
    flags = {key: getattr(args, key, None) for key in ("p", "format", "family", "seed")}
    cfg = OmegaConf.merge(cfg, {key: value for key, value in flags.items() if value is not None})
    if getattr(args, "errors", False):
        cfg.verify.report_errors = True
    return cfg


# %%
def _index_rows(n: int, max_order: Optional[int], members_text: Optional[str]) -> List[Coalition]:
    if members_text is not None:
        players = parse_players(members_text)
        if len(set(players)) != len(players) or any(not 1 <= i <= n for i in players):
            raise GameValidationError(f"coalition {members_text!r} must list distinct players in 1..{n}")
        return [coalition(players)]
    order = n if max_order is None else max_order
    if not 0 <= order <= n:
        raise GameValidationError(f"max-order must be in [0, {n}], got {order}")
    return [m for m, size in enumerate(cardinalities(n)) if size <= order]


def cmd_index(args: argparse.Namespace, cfg: DictConfig) -> int:
    doc = load_document(args.game)
    f = doc.to_game()
    if cfg.family == WEIGHTED_BANZHAF:
        table = weighted_banzhaf_all(f, parse_profile(cfg.p, f.n))
    elif cfg.family == BANZHAF:
        table = banzhaf_all(f)
    elif cfg.family == SHAPLEY:
        table = shapley_interaction_all(f)
    else:
        table = InteractionTable(f.n, mobius(f).coeffs, None, MOBIUS)
    rows = _index_rows(f.n, args.max_order, args.coalition)
    log.info("%s index of %d coalitions, n=%d", cfg.family, len(rows), f.n)
    sys.stdout.write(reports.index_report(table, rows, cfg.format))
    return EXIT_OK


def cmd_approx(args: argparse.Namespace, cfg: DictConfig) -> int:
    doc = load_document(args.game)
    f = doc.to_game()
    p = parse_profile(cfg.p, f.n).require_strict()
    k = check_degree(f.n, args.k)
    approx = best_approximation(f, p, k)
    residual = residual_norm(f, approx, p)
    try:
        r2 = r_squared(f, p, k)
    except ConstantGameError:
        log.info("constant game, R-squared undefined")
        r2 = None
    save_document(document_from_approximation(approx, f"{doc.name or 'game'} k={k}"), args.out)
    log.info("wrote degree-%d approximation to %s", k, args.out)
    sys.stdout.write(reports.approx_report(f.n, k, p, residual, r2, cfg.format))
    return EXIT_OK


def cmd_verify(args: argparse.Namespace, cfg: DictConfig) -> int:
    doc = load_document(args.game)
    f = doc.to_game()
    p = parse_profile(cfg.p, f.n).require_strict()
    report = run_suite(f, p, int(cfg.seed), cfg.verify, doc.name or Path(args.game).stem)
    sys.stdout.write(reports.verify_report(report, cfg.format, cfg.verify.report_errors))
    if not report.passed:
        log.error("failed identities: %s", "; ".join(report.failures))
        return EXIT_VERIFY
    return EXIT_OK


COMMANDS = {"index": cmd_index, "approx": cmd_approx, "verify": cmd_verify}


# %%
def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    cfg = load_config(args)
    logging.basicConfig(
        level=cfg.log_level, stream=sys.stderr, format="%(levelname)s %(name)s: %(message)s", force=True
    )
    try:
        return COMMANDS[args.command](args, cfg)
    except ProfileError as e:
        code, message = EXIT_PROFILE, str(e)
    except GameValidationError as e:
        code, message = EXIT_INPUT, str(e)
    except OSError as e:
        code, message = EXIT_IO, f"{e.filename or ''}: {e.strerror or e}"
    except ConstantGameError as e:
        code, message = EXIT_INPUT, str(e)
    sys.stderr.write(f"error: {' '.join(message.split())}\n")
    return code


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
