# bounded_treemaps/models/__init__.py
"""
โมดูลสำหรับชนิดข้อมูลของต้นไม้ รูปเรขาคณิต ผลการจัดวาง และข้อผิดพลาด
"""
# เปิดใช้งานการ import ทั้งหมดจากโมดูลนี้
__all__ = ['errors', 'geometry', 'instances', 'layout', 'tree']
