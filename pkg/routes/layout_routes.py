# bounded_treemaps/routes/layout_routes.py
from flask import Blueprint, Response, current_app, jsonify, request
from models.errors import ParseError
from services.layout_service import check_algorithm, compute_layout
from services.render_service import RenderService, RenderStyle
from services.verification_service import VerificationService
from utils.file_utils import layout_to_dict, read_upload, tree_from_dict

bp = Blueprint('layouts', __name__, url_prefix='/api/layouts')

DEFAULT_ALGORITHM = "ortho"


def verifier_from_config():
    cfg = current_app.config
    return VerificationService(cfg["AREA_TOLERANCE"], cfg["ASPECT_TOLERANCE"],
                               cfg["ANGLE_TOLERANCE"])


def renderer_from_config():
    cfg = current_app.config
    return RenderService(RenderStyle(viewport=cfg["SVG_VIEWPORT"], decimals=cfg["SVG_DECIMALS"]))


def read_tree_request():
    """
    อ่านต้นไม้และชื่ออัลกอริทึมจาก request

    รับได้ทั้ง JSON {"tree": ..., "algorithm": ...} และไฟล์ที่อัปโหลดในฟิลด์ file
    (ชื่ออัลกอริทึมอยู่ในฟิลด์ algorithm ของฟอร์ม)

    Returns:
        tuple: (WeightedTree, algorithm)
    """
    if 'file' in request.files:
        tree = read_upload(request.files['file'])
        algorithm = request.form.get('algorithm', DEFAULT_ALGORITHM)
    else:
        data = request.get_json(silent=True)
        if not isinstance(data, dict) or 'tree' not in data:
            raise ParseError("กรุณาส่ง tree ในรูปแบบ JSON หรืออัปโหลดไฟล์", "request")
        tree = tree_from_dict(data['tree'], source="request")
        algorithm = data.get('algorithm', DEFAULT_ALGORITHM)
    return tree, check_algorithm(algorithm)


@bp.route('', methods=['POST'])
def create_layout():
    """
    คำนวณ layout และตรวจสอบทันที
    """
    tree, algorithm = read_tree_request()
    layout = compute_layout(tree, algorithm)
    report = verifier_from_config().verify(tree, layout)
    return jsonify({
        "layout": layout_to_dict(layout),
        "verification": report.to_dict(),
    })


@bp.route('/svg', methods=['POST'])
def create_layout_svg():
    """
    คำนวณ layout แล้วส่งกลับเป็นเอกสาร SVG
    """
    tree, algorithm = read_tree_request()
    layout = compute_layout(tree, algorithm)
    return Response(renderer_from_config().render_svg(layout), mimetype='image/svg+xml')


@bp.route('/png', methods=['POST'])
def create_layout_png():
    """
    คำนวณ layout แล้วส่งกลับเป็นภาพ PNG (ขนาดเลือกได้ด้วย ?size=)
    """
    tree, algorithm = read_tree_request()
    size = request.args.get('size', current_app.config["PNG_SIZE"], type=int)
    if not size or size <= 0 or size > 4096:
        return jsonify({"error": "ขนาดภาพต้องอยู่ระหว่าง 1 ถึง 4096"}), 400
    layout = compute_layout(tree, algorithm)
    return Response(renderer_from_config().render_png(layout, size=size), mimetype='image/png')
