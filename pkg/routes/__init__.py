# bounded_treemaps/routes/__init__.py
"""
โมดูลสำหรับเส้นทาง API ของแอปพลิเคชัน
"""
# เปิดใช้งานการ import ทั้งหมดจากโมดูลนี้
__all__ = ['layout_routes', 'verify_routes']
