# bounded_treemaps/config.py
import logging
import os
from dotenv import load_dotenv

# โหลดตัวแปรสภาพแวดล้อมจากไฟล์ .env
load_dotenv()

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"


def _float(name, default):
    return float(os.getenv(name, default))


def _int(name, default):
    return int(os.getenv(name, default))


class Config:
    """
    คลาสสำหรับการกำหนดค่าแอปพลิเคชัน
    """
    # Flask config
    SECRET_KEY = os.getenv("FLASK_SECRET_KEY", "your-secret-key")
    DEBUG = os.getenv("FLASK_DEBUG", "True") == "True"
    TESTING = False

    # ค่าคลาดเคลื่อนของตัวตรวจสอบ
    AREA_TOLERANCE = _float("AREA_TOLERANCE", 1e-6)
    ASPECT_TOLERANCE = _float("ASPECT_TOLERANCE", 1e-6)
    ANGLE_TOLERANCE = _float("ANGLE_TOLERANCE", 1e-9)

    # การวาดภาพ
    SVG_VIEWPORT = _int("SVG_VIEWPORT", 1000)
    SVG_DECIMALS = _int("SVG_DECIMALS", 6)
    PNG_SIZE = _int("PNG_SIZE", 800)

    # การทดลองแบบสุ่ม
    DEFAULT_SEED = _int("DEFAULT_SEED", 1)
    BENCH_WORKERS = _int("BENCH_WORKERS", 1)

    LOG_LEVEL = os.getenv("LOG_LEVEL", "INFO")

    # ค่ากำหนดอื่นๆ
    MAX_CONTENT_LENGTH = _int("MAX_CONTENT_LENGTH", 4 * 1024 * 1024)  # 4 MB


class DevelopmentConfig(Config):
    """
    ค่ากำหนดสำหรับสภาพแวดล้อมการพัฒนา
    """
    DEBUG = True
    LOG_LEVEL = os.getenv("LOG_LEVEL", "DEBUG")


class ProductionConfig(Config):
    """
    ค่ากำหนดสำหรับสภาพแวดล้อมการใช้งานจริง
    """
    DEBUG = False


class TestingConfig(Config):
    """
    ค่ากำหนดสำหรับการทดสอบ
    """
    DEBUG = False
    TESTING = True
    LOG_LEVEL = "WARNING"


# เลือกค่ากำหนดตามสภาพแวดล้อม
config = {
    'development': DevelopmentConfig,
    'production': ProductionConfig,
    'testing': TestingConfig,
    'default': DevelopmentConfig
}


def get_config(name=None):
    """
    ดึงค่ากำหนดตามสภาพแวดล้อม (ตัวแปร TREEMAP_ENV)

    Returns:
        Config: คลาสค่ากำหนด
    """
    config_name = name or os.getenv('TREEMAP_ENV', 'default')
    return config.get(config_name, config['default'])


def configure_logging(cfg, level=None):
    """
    ติดตั้ง formatter เดียวให้ root logger ที่ระดับ cfg.LOG_LEVEL

    Args:
        cfg (Config): คลาสค่ากำหนด
        level (str | None): ระดับที่ใช้แทน cfg.LOG_LEVEL
    """
    logging.basicConfig(format=LOG_FORMAT, level=(level or cfg.LOG_LEVEL).upper(), force=True)
