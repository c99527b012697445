# bounded_treemaps/services/__init__.py
"""
โมดูลสำหรับอัลกอริทึมจัดวาง การตรวจสอบ การวาดภาพ และการทดลอง
"""
# เปิดใช้งานการ import ทั้งหมดจากโมดูลนี้
__all__ = ['tree_service', 'partition_service', 'convex_layout_service', 'ortho_layout_service',
           'single_level_service', 'packing_service', 'layout_service', 'verification_service',
           'render_service', 'generator_service', 'bench_service']
