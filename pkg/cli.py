# bounded_treemaps/cli.py
"""
ส่วนติดต่อบรรทัดคำสั่ง

    python cli.py layout --algo ortho --input t.json --svg o.svg --report r.json
    python cli.py verify --input t.json --layout r.json
    python cli.py bench --algo single --trials 100 --seed 7
    python cli.py pack --side 3 --squares 2,2

exit code: 0 เมื่อผ่าน, 1 เมื่อตรวจสอบไม่ผ่าน (หรือจัดวางไม่สำเร็จ), 2 เมื่อใช้งานผิด
"""
import argparse
import json
import logging
import os
import sys

from config import configure_logging, get_config
from models.errors import InputError, PackingError, TreeError, TreemapError
from models.instances import SquarePackingInstance
from services.bench_service import BenchService
from services.generator_service import generate_random_tree
from services.layout_service import ALGORITHMS, compute_layout
from services.packing_service import find_packing, packing_layout
from services.render_service import RenderService, RenderStyle
from services.verification_service import PROFILES, VerificationService
from utils.file_utils import layout_to_dict, parse_tree, read_layout, write_tree
from utils.helpers import to_json

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def build_parser():
    parser = argparse.ArgumentParser(
        prog="bounded-treemaps",
        description="treemap ที่อัตราส่วนมีขอบเขต: จัดวาง ตรวจสอบ และทดลองแบบสุ่ม",
    )
    parser.add_argument("--log-level", default=None, help="ระดับ log (ค่าเริ่มต้นจาก LOG_LEVEL)")
    sub = parser.add_subparsers(dest="command", required=True)

    layout = sub.add_parser("layout", help="จัดวางต้นไม้จากไฟล์")
    layout.add_argument("--algo", choices=ALGORITHMS, required=True)
    layout.add_argument("--input", required=True, help="ไฟล์ต้นไม้ (.json หรือ .csv)")
    layout.add_argument("--svg", help="ไฟล์ SVG ที่จะเขียน")
    layout.add_argument("--png", help="ไฟล์ PNG ที่จะเขียน")
    layout.add_argument("--report", help="ไฟล์รายงาน (ใช้กับคำสั่ง verify ได้)")

    verify = sub.add_parser("verify", help="ตรวจไฟล์ layout กับต้นไม้")
    verify.add_argument("--input", required=True, help="ไฟล์ต้นไม้")
    verify.add_argument("--layout", required=True, help="ไฟล์ layout หรือรายงานจากคำสั่ง layout")
    verify.add_argument("--profile", choices=PROFILES, default=None)
    verify.add_argument("--report", help="ไฟล์รายงานการตรวจ")

    bench = sub.add_parser("bench", help="ทดลองกับต้นไม้สุ่ม")
    bench.add_argument("--algo", choices=ALGORITHMS, required=True)
    bench.add_argument("--trials", type=int, default=100)
    bench.add_argument("--seed", type=int, default=None)
    bench.add_argument("--spec", default=None,
                       help='ข้อกำหนดต้นไม้แบบ JSON เช่น {"maxDepth": 12, "leafCount": 500}')
    bench.add_argument("--workers", type=int, default=None)
    bench.add_argument("--report", help="ไฟล์รายงาน (ค่าเริ่มต้นพิมพ์ออกทางหน้าจอ)")
    bench.add_argument("--dump", help="โฟลเดอร์สำหรับเขียนต้นไม้ของแต่ละรอบ")

    pack = sub.add_parser("pack", help="ค้นหาการจัดวางสี่เหลี่ยมจัตุรัสบนตาราง")
    pack.add_argument("--side", type=int, required=True, help="ด้านของกล่อง")
    pack.add_argument("--squares", required=True, help="ด้านของสี่เหลี่ยม คั่นด้วย , เช่น 2,2,1")
    pack.add_argument("--svg", help="ไฟล์ SVG ของ treemap อัตราส่วน 1 ถ้าวางได้")
    return parser


def _renderer(cfg):
    return RenderService(RenderStyle(viewport=cfg.SVG_VIEWPORT, decimals=cfg.SVG_DECIMALS))


def _verifier(cfg):
    return VerificationService(cfg.AREA_TOLERANCE, cfg.ASPECT_TOLERANCE, cfg.ANGLE_TOLERANCE)


def _write(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)


def _print_failures(report):
    for node_id, violation in report.failures():
        print(f"FAIL {node_id or '<tree>'}: {violation}", file=sys.stderr)


def run_layout(args, cfg):
    tree = parse_tree(args.input)
    layout = compute_layout(tree, args.algo)
    report = _verifier(cfg).verify(tree, layout)
    if args.svg:
        _write(args.svg, _renderer(cfg).render_svg(layout))
    if args.png:
        with open(args.png, "wb") as handle:
            handle.write(_renderer(cfg).render_png(layout, size=cfg.PNG_SIZE))
    if args.report:
        _write(args.report, to_json({**layout_to_dict(layout), "verification": report.to_dict()}))
    print(f"{args.algo}: {len(layout)} regions, max asp {layout.max_aspect():.6f}, "
          f"{'pass' if report.passed else 'FAIL'}")
    _print_failures(report)
    return EXIT_OK if report.passed else EXIT_FAILED


def run_verify(args, cfg):
    tree = parse_tree(args.input)
    layout = read_layout(args.layout)
    report = _verifier(cfg).verify(tree, layout, args.profile)
    if args.report:
        _write(args.report, to_json(report.to_dict()))
    print(f"verify ({report.profile}): {'pass' if report.passed else 'FAIL'}")
    _print_failures(report)
    return EXIT_OK if report.passed else EXIT_FAILED


def run_bench(args, cfg):
    if args.trials < 0:
        raise UsageError("--trials ต้องไม่ติดลบ")
    try:
        spec = json.loads(args.spec) if args.spec else None
    except json.JSONDecodeError as exc:
        raise UsageError(f"--spec ไม่ใช่ JSON ที่ถูกต้อง: {exc.msg}") from exc
    seed = cfg.DEFAULT_SEED if args.seed is None else args.seed
    service = BenchService(args.workers or cfg.BENCH_WORKERS)
    report = service.run_bench(args.algo, args.trials, seed, spec)
    if args.dump:
        os.makedirs(args.dump, exist_ok=True)
        for trial in report.trials:
            tree = generate_random_tree(trial.seed, service.trial_spec(args.algo, trial.seed, spec))
            write_tree(tree, os.path.join(args.dump, f"trial-{trial.trial:04d}.json"))
    text = to_json(report.to_dict())
    if args.report:
        _write(args.report, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK if report.passed else EXIT_FAILED


def run_pack(args, cfg):
    try:
        sides = tuple(int(s) for s in args.squares.split(",") if s.strip())
    except ValueError as exc:
        raise UsageError("--squares ต้องเป็นจำนวนเต็มคั่นด้วย ,") from exc
    sp = SquarePackingInstance(args.side, sides)
    placement = find_packing(sp)
    if placement is None:
        print(f"side {args.side}, squares {list(sides)}: infeasible")
        return EXIT_OK
    print(f"side {args.side}, squares {list(sides)}: "
          + " ".join(f"{s}@{col},{row}" for s, (col, row) in zip(sides, placement.positions)))
    if args.svg:
        _write(args.svg, _renderer(cfg).render_svg(packing_layout(sp, placement)))
    return EXIT_OK


COMMANDS = {"layout": run_layout, "verify": run_verify, "bench": run_bench, "pack": run_pack}


def cli_main(argv=None):
    """
    จุดเริ่มของบรรทัดคำสั่ง

    Args:
        argv (list[str] | None): อาร์กิวเมนต์ (ค่าเริ่มต้น sys.argv[1:])

    Returns:
        int: exit code
    """
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    cfg = get_config()
    configure_logging(cfg, args.log_level)
    try:
        return COMMANDS[args.command](args, cfg)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (InputError, TreeError, PackingError) as e:
        logger.error("%s failed: %s", args.command, e.message)
        print(f"error: {e.message}", file=sys.stderr)
        return EXIT_USAGE
    except TreemapError as e:
        logger.error("%s failed: %s", args.command, e.message)
        print(f"error: {e.message}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(cli_main())
