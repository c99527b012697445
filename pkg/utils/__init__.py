# bounded_treemaps/utils/__init__.py
"""
โมดูลสำหรับฟังก์ชันเรขาคณิต รูปแบบไฟล์ และฟังก์ชันช่วยเหลือต่างๆ
"""
# เปิดใช้งานการ import ทั้งหมดจากโมดูลนี้
__all__ = ['file_utils', 'geometry', 'helpers']
