# bounded_treemaps/app.py
from flask import Flask, jsonify
import logging
import os
from routes import layout_routes, verify_routes
from models.errors import (
    GeometryError,
    InputError,
    LayoutError,
    PackingError,
    TooLarge,
    TreeError,
    TreemapError,
    VerificationError,
)
from config import configure_logging, get_config

# โหลดค่ากำหนด
config = get_config()
configure_logging(config)
logger = logging.getLogger(__name__)

# สร้าง Flask application
app = Flask(__name__)

# ตั้งค่า Secret Key และค่ากำหนดทั้งหมด
app.secret_key = config.SECRET_KEY
app.config.from_object(config)

# ลงทะเบียน Blueprints
app.register_blueprint(layout_routes.bp)
app.register_blueprint(verify_routes.bp)


def status_for(error):
    """
    แปลงชนิดของข้อผิดพลาดเป็น HTTP status

    Returns:
        int: 413 เมื่ออินสแตนซ์ใหญ่เกิน, 400 เมื่อ input ผิด, 422 เมื่อจัดวางหรือตรวจสอบไม่ผ่าน
    """
    if isinstance(error, TooLarge):
        return 413
    if isinstance(error, (InputError, TreeError)):
        return 400
    if isinstance(error, (LayoutError, VerificationError, GeometryError, PackingError)):
        return 422
    return 400


# หน้าหลัก
@app.route('/')
def index():
    return jsonify({
        "service": "bounded-treemaps",
        "endpoints": {
            "POST /api/layouts": "คำนวณ layout และรายงานการตรวจสอบ",
            "POST /api/layouts/svg": "คำนวณ layout แล้วส่งกลับเป็น SVG",
            "POST /api/layouts/png": "คำนวณ layout แล้วส่งกลับเป็น PNG",
            "POST /api/verify": "ตรวจ layout กับต้นไม้",
        },
    })


# ตัวจัดการข้อผิดพลาด
@app.errorhandler(TreemapError)
def treemap_error(e):
    status = status_for(e)
    logger.error("request failed (%d): %s", status, e.message)
    return jsonify(e.to_dict()), status


@app.errorhandler(404)
def not_found(e):
    return jsonify({"error": "ไม่พบเส้นทางที่ต้องการ"}), 404


@app.errorhandler(413)
def request_entity_too_large(e):
    return jsonify({"error": "ไฟล์มีขนาดใหญ่เกินไป"}), 413


if __name__ == '__main__':
    app.run(debug=config.DEBUG,
            host=os.getenv("FLASK_HOST", "0.0.0.0"),
            port=int(os.getenv("FLASK_PORT", 5000)))
