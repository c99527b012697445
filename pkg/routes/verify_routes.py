# bounded_treemaps/routes/verify_routes.py
from flask import Blueprint, jsonify, request
from routes.layout_routes import verifier_from_config
from utils.file_utils import layout_from_dict, tree_from_dict

bp = Blueprint('verify', __name__, url_prefix='/api/verify')


@bp.route('', methods=['POST'])
def verify_layout():
    """
    ตรวจ layout ที่ส่งมากับต้นไม้ (ผลตรวจไม่ผ่านยังคืน 200 พร้อม pass = false)
    """
    data = request.get_json(silent=True)
    if not isinstance(data, dict) or 'tree' not in data or 'layout' not in data:
        return jsonify({"error": "กรุณาส่ง tree และ layout"}), 400

    tree = tree_from_dict(data['tree'], source="request")
    layout = layout_from_dict(data['layout'], source="request")
    report = verifier_from_config().verify(tree, layout, data.get('profile'))
    return jsonify(report.to_dict())
