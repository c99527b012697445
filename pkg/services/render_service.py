# bounded_treemaps/services/render_service.py
"""
วาด Layout เป็น SVG (ElementTree) และ PNG (Pillow)

เส้นขอบของโหนดที่อยู่สูงกว่าในลำดับชั้นหนาและเข้มกว่า
พื้นที่ถูกวาดจากโหนดที่ลึกที่สุดก่อน เพื่อให้เส้นของโหนดระดับบนอยู่ด้านบนสุด
"""
import io
import logging
import zlib
import xml.etree.ElementTree as ET
from dataclasses import dataclass

from PIL import Image, ImageDraw

from models.errors import BadSpec
from models.layout import Layout

logger = logging.getLogger(__name__)

SVG_NAMESPACE = "http://www.w3.org/2000/svg"


@dataclass(frozen=True)
class RenderStyle:
    """
    รูปแบบการวาด

    Args:
        stroke_widths (tuple[float]): ความหนาของเส้นตามความลึก (ต้องไม่เพิ่มขึ้น)
        stroke_colors (tuple[str]): สีของเส้นตามความลึก จากเข้มไปอ่อน
        leaf_palette (tuple[str]): สีพื้นของใบ
        viewport (int): ขนาดของ viewBox (สี่เหลี่ยมหน่วยถูกขยายเป็น viewport × viewport)
        decimals (int): จำนวนทศนิยมของพิกัด
    """
    stroke_widths: tuple = (6.0, 4.0, 2.5, 1.5, 1.0, 0.6, 0.4)
    stroke_colors: tuple = ("#000000", "#1f1f1f", "#3d3d3d", "#5c5c5c", "#7a7a7a", "#999999",
                            "#b8b8b8")
    leaf_palette: tuple = ("#8dd3c7", "#ffffb3", "#bebada", "#fb8072", "#80b1d3", "#fdb462",
                           "#b3de69", "#fccde5", "#d9d9d9", "#bc80bd")
    background: str = "#ffffff"
    viewport: int = 1000
    decimals: int = 6

    def __post_init__(self):
        if not self.stroke_widths or not self.stroke_colors or not self.leaf_palette:
            raise BadSpec("รูปแบบการวาดต้องมีความหนาเส้น สีเส้น และสีพื้นอย่างน้อยอย่างละหนึ่งค่า")
        if any(w <= 0 for w in self.stroke_widths):
            raise BadSpec("ความหนาของเส้นต้องเป็นบวก")
        if any(b > a for a, b in zip(self.stroke_widths, self.stroke_widths[1:])):
            raise BadSpec("ความหนาของเส้นต้องไม่เพิ่มขึ้นตามความลึก")

    def stroke_width(self, depth):
        return self.stroke_widths[min(depth, len(self.stroke_widths) - 1)]

    def stroke_color(self, depth):
        return self.stroke_colors[min(depth, len(self.stroke_colors) - 1)]

    def fill(self, node_id):
        # crc32 ให้ผลเหมือนกันทุกครั้งที่รัน ต่างจาก hash()
        return self.leaf_palette[zlib.crc32(node_id.encode("utf-8")) % len(self.leaf_palette)]


DEFAULT_STYLE = RenderStyle()


def paint_order(layout: Layout):
    """พื้นที่เรียงจากลึกสุดไปหาราก (ความลึกเท่ากันเรียงตาม id)"""
    return sorted(layout.regions.values(), key=lambda r: (-r.depth, r.node_id))


class RenderService:
    """
    คลาสสำหรับแปลง Layout เป็นภาพ
    """

    def __init__(self, style: RenderStyle = DEFAULT_STYLE):
        self.style = style

    def _svg_point(self, point, style):
        scale = style.viewport
        return (f"{point[0] * scale:.{style.decimals}f}",
                f"{(1.0 - point[1]) * scale:.{style.decimals}f}")

    def _path_data(self, vertices, style):
        coords = [",".join(self._svg_point(p, style)) for p in vertices]
        return "M " + " L ".join(coords) + " Z"

    def render_svg(self, layout: Layout, style: RenderStyle = None) -> str:
        """
        สร้างเอกสาร SVG 1.1: หนึ่ง path ต่อหนึ่งพื้นที่

        ใบมีสีพื้นจาก palette ส่วนโหนดภายในวาดเฉพาะเส้นขอบ
        ผลลัพธ์เหมือนเดิมทุกไบต์สำหรับ input เดียวกัน

        Returns:
            str: เอกสาร SVG
        """
        style = style or self.style
        size = str(style.viewport)
        root = ET.Element("svg", {
            "xmlns": SVG_NAMESPACE,
            "version": "1.1",
            "width": size,
            "height": size,
            "viewBox": f"0 0 {size} {size}",
        })
        ET.SubElement(root, "rect", {
            "x": "0", "y": "0", "width": size, "height": size, "fill": style.background,
        })
        group = ET.SubElement(root, "g", {"stroke-linejoin": "miter", "data-algorithm": layout.algorithm})
        for region in paint_order(layout):
            ET.SubElement(group, "path", {
                "id": region.node_id,
                "d": self._path_data(region.vertices, style),
                "fill": style.fill(region.node_id) if region.is_leaf else "none",
                "stroke": style.stroke_color(region.depth),
                "stroke-width": f"{style.stroke_width(region.depth):g}",
                "data-shape": str(region.shape),
            })
        document = ET.tostring(root, encoding="unicode")
        logger.debug("rendered %d regions to SVG (%d bytes)", len(layout), len(document))
        return '<?xml version="1.0" encoding="UTF-8"?>\n' + document + "\n"

    def render_png(self, layout: Layout, style: RenderStyle = None, size=800) -> bytes:
        """
        วาด layout เป็นภาพ PNG ขนาด size × size ด้วยรูปแบบเดียวกับ SVG

        Returns:
            bytes: ข้อมูลไฟล์ PNG
        """
        style = style or self.style
        image = Image.new("RGB", (size, size), style.background)
        draw = ImageDraw.Draw(image)

        def pixels(vertices):
            return [(x * size, (1.0 - y) * size) for x, y in vertices]

        ordered = paint_order(layout)
        for region in ordered:
            if region.is_leaf:
                draw.polygon(pixels(region.vertices), fill=style.fill(region.node_id))
        for region in ordered:
            points = pixels(region.vertices)
            width = max(1, round(style.stroke_width(region.depth) * size / style.viewport))
            draw.line(points + points[:1], fill=style.stroke_color(region.depth), width=width)

        buffer = io.BytesIO()
        image.save(buffer, format="PNG")
        return buffer.getvalue()


# ---- convenience functions ----

_default_service = RenderService()


def render_svg(layout, style=None):
    return _default_service.render_svg(layout, style)


def render_png(layout, style=None, size=800):
    return _default_service.render_png(layout, style, size)
