# bounded_treemaps/utils/file_utils.py
"""
รูปแบบไฟล์: เอกสารลำดับชั้น (JSON แบบ name/weight/children), CSV แบบ path,weight
และไฟล์บันทึก layout (รายการ node กับจุดยอด)

id ของโหนดคือ path ของชื่อจากรากคั่นด้วย '/' เช่น root/a/b
"""
import csv
import io
import json
import json.decoder
import json.scanner
import logging
import math
import os

from werkzeug.utils import secure_filename

from models.errors import (
    GeometryError,
    MalformedRegion,
    MalformedTree,
    NonPositiveLeafWeight,
    ParseError,
)
from models.layout import Layout, Region
from models.tree import TreeNode, WeightedTree
from services import tree_service
from utils.helpers import generate_csv, to_json

logger = logging.getLogger(__name__)

# ประเภทไฟล์ที่อนุญาต
ALLOWED_EXTENSIONS = {"json", "csv"}
PATH_SEPARATOR = "/"


def allowed_file(filename):
    """
    ตรวจสอบว่าไฟล์มีนามสกุลที่อนุญาตหรือไม่

    Args:
        filename (str): ชื่อไฟล์ที่ต้องการตรวจสอบ

    Returns:
        bool: True ถ้าไฟล์มีนามสกุลที่อนุญาต, False ถ้าไม่ใช่
    """
    return "." in filename and get_file_extension(filename) in ALLOWED_EXTENSIONS


def get_file_extension(filename):
    return filename.rsplit(".", 1)[1].lower() if "." in filename else ""


# ---- JSON พร้อมตำแหน่งของแต่ละ object ----

class _LocatedDict(dict):
    """dict ที่จำตำแหน่งเริ่มต้น (บรรทัด, คอลัมน์) ในข้อความต้นฉบับ"""
    line = None
    column = None


class _LocatingDecoder(json.JSONDecoder):
    # ใช้ scanner ของ Python แทนของ C เพื่อให้ parse_object ที่ครอบไว้ถูกเรียก
    def __init__(self):
        super().__init__()

        def parse_object(s_and_end, *args):
            text, end = s_and_end
            obj, new_end = json.decoder.JSONObject(s_and_end, *args)
            located = _LocatedDict(obj)
            start = end - 1
            located.line = text.count("\n", 0, start) + 1
            located.column = start - text.rfind("\n", 0, start)
            return located, new_end

        self.parse_object = parse_object
        self.scan_once = json.scanner.py_make_scanner(self)


def _loads_located(text, source):
    try:
        return _LocatingDecoder().decode(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"JSON ไม่ถูกต้อง: {exc.msg}", source, exc.lineno, exc.colno) from exc


def _location(obj):
    return getattr(obj, "line", None), getattr(obj, "column", None)


def _parse_weight(value, node_id, source, line, position):
    if value is None:
        return None
    if isinstance(value, bool):
        raise ParseError(f"น้ำหนักของ '{node_id}' ต้องเป็นตัวเลข", source, line, position)
    try:
        weight = float(value)
    except (TypeError, ValueError):
        raise ParseError(f"น้ำหนักของ '{node_id}' ต้องเป็นตัวเลข แต่ได้ {value!r}",
                         source, line, position) from None
    if not math.isfinite(weight):
        raise ParseError(f"น้ำหนักของ '{node_id}' ต้องเป็นจำนวนจำกัด", source, line, position)
    return weight


def _check_name(name, source, line, position):
    if not isinstance(name, str) or not name:
        raise ParseError("ทุกโหนดต้องมี name ที่เป็นข้อความ", source, line, position)
    if PATH_SEPARATOR in name:
        raise ParseError(f"ชื่อโหนด '{name}' ต้องไม่มี '{PATH_SEPARATOR}'", source, line, position)
    return name


def tree_from_dict(document, source="<memory>", normalize=True) -> WeightedTree:
    """
    แปลงเอกสารลำดับชั้น {"name", "weight"?, "children"?} เป็นต้นไม้

    ใบต้องมี weight ส่วนโหนดภายในระบุหรือไม่ก็ได้ (ถ้าระบุต้องเท่ากับผลรวมของลูก)

    Args:
        document (dict): เอกสารที่ decode แล้ว
        source (str): ชื่อแหล่งที่มาสำหรับข้อความผิดพลาด
        normalize (bool): normalize น้ำหนักให้รากเป็น 1

    Returns:
        WeightedTree: ต้นไม้ (normalize แล้วถ้า normalize=True)

    Raises:
        ParseError: ถ้าโครงสร้างเอกสารไม่ถูกต้อง
        NonPositiveLeafWeight: ถ้าใบมีน้ำหนัก ≤ 0 (พร้อมตำแหน่งในไฟล์)
    """
    if not isinstance(document, dict):
        raise ParseError("เอกสารลำดับชั้นต้องเป็น object", source, 1, 1)
    nodes = {}
    stack = [(document, None)]
    root_id = None
    while stack:
        obj, parent_id = stack.pop()
        line, position = _location(obj)
        if not isinstance(obj, dict):
            raise ParseError(f"ลูกของ '{parent_id}' ต้องเป็น object", source, line, position)
        name = _check_name(obj.get("name"), source, line, position)
        node_id = name if parent_id is None else f"{parent_id}{PATH_SEPARATOR}{name}"
        if node_id in nodes:
            raise ParseError(f"ชื่อโหนด '{node_id}' ซ้ำ", source, line, position)
        children = obj.get("children") or []
        if not isinstance(children, list):
            raise ParseError(f"children ของ '{node_id}' ต้องเป็น list", source, line, position)
        weight = _parse_weight(obj.get("weight"), node_id, source, line, position)
        if not children:
            if weight is None:
                raise ParseError(f"ใบ '{node_id}' ต้องมี weight", source, line, position)
            if weight <= 0:
                raise NonPositiveLeafWeight(node_id, weight, source, line)
        child_ids = []
        for child in children:
            child_name = child.get("name") if isinstance(child, dict) else None
            child_ids.append(f"{node_id}{PATH_SEPARATOR}{child_name}")
        nodes[node_id] = TreeNode(node_id, name, weight, tuple(child_ids))
        if parent_id is None:
            root_id = node_id
        stack.extend((child, node_id) for child in reversed(children))
    return _finish(nodes, root_id, source, normalize)


def tree_from_csv(text, source="<memory>", normalize=True) -> WeightedTree:
    """
    แปลง CSV แบบ path,weight เป็นต้นไม้ (บรรทัดหัว 'path,weight' ใส่หรือไม่ก็ได้)

    โหนดบน path ที่ไม่มีบรรทัดของตัวเองถูกสร้างเป็นโหนดภายในที่ไม่ระบุน้ำหนัก
    ลำดับของลูกเป็นไปตามลำดับที่พบครั้งแรก

    Raises:
        ParseError: ถ้าบรรทัดไม่ถูกต้องหรือมีรากมากกว่าหนึ่ง
    """
    reader = csv.reader(io.StringIO(text))
    weights = {}
    lines = {}
    children = {}
    root_id = None
    for row in reader:
        line = reader.line_num
        if not row or all(not cell.strip() for cell in row):
            continue
        if line == 1 and [c.strip().lower() for c in row[:2]] == ["path", "weight"]:
            continue
        if len(row) > 2:
            raise ParseError("แต่ละบรรทัดต้องมีเพียง path และ weight", source, line, 1)
        names = [part.strip() for part in row[0].split(PATH_SEPARATOR)]
        for name in names:
            _check_name(name, source, line, 1)
        node_id = PATH_SEPARATOR.join(names)
        if root_id is None:
            root_id = names[0]
        elif names[0] != root_id:
            raise ParseError(f"พบรากมากกว่าหนึ่ง ('{root_id}', '{names[0]}')", source, line, 1)
        if node_id in lines:
            raise ParseError(f"path '{node_id}' ซ้ำ (บรรทัด {lines[node_id]})", source, line, 1)
        lines[node_id] = line
        cell = row[1].strip() if len(row) > 1 else ""
        weights[node_id] = _parse_weight(cell or None, node_id, source, line, len(row[0]) + 2)
        prefix = names[0]
        children.setdefault(prefix, [])
        for name in names[1:]:
            child = f"{prefix}{PATH_SEPARATOR}{name}"
            if child not in children:
                children[prefix].append(child)
                children[child] = []
            prefix = child
    if root_id is None:
        raise ParseError("ไฟล์ CSV ไม่มีข้อมูล", source, 1, 1)

    nodes = {}
    for node_id, kids in children.items():
        weight = weights.get(node_id)
        if not kids:
            if weight is None:
                raise ParseError(f"ใบ '{node_id}' ต้องมี weight", source, lines.get(node_id), 1)
            if weight <= 0:
                raise NonPositiveLeafWeight(node_id, weight, source, lines.get(node_id))
        label = node_id.rsplit(PATH_SEPARATOR, 1)[-1]
        nodes[node_id] = TreeNode(node_id, label, weight, tuple(kids))
    return _finish(nodes, root_id, source, normalize)


def _finish(nodes, root_id, source, normalize):
    try:
        tree = WeightedTree(nodes, root_id)
    except MalformedTree as exc:
        raise ParseError(exc.message, source) from exc
    if not normalize:
        return tree
    return tree_service.validate_and_normalize(tree, strict=True)


def parse_tree_text(text, fmt="json", source="<memory>") -> WeightedTree:
    """แปลงข้อความในรูปแบบ json หรือ csv เป็นต้นไม้ที่ normalize แล้ว"""
    if fmt == "csv":
        return tree_from_csv(text, source)
    if fmt != "json":
        raise ParseError(f"ไม่รองรับรูปแบบ '{fmt}'", source)
    return tree_from_dict(_loads_located(text, source), source)


def parse_tree(path) -> WeightedTree:
    """
    อ่านต้นไม้จากไฟล์ (.csv เป็น path,weight นอกนั้นเป็น JSON)

    Raises:
        ParseError: ถ้าอ่านไฟล์ไม่ได้หรือรูปแบบไม่ถูกต้อง
    """
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"อ่านไฟล์ไม่ได้: {exc}", str(path)) from exc
    fmt = "csv" if str(path).lower().endswith(".csv") else "json"
    tree = parse_tree_text(text, fmt, str(path))
    logger.debug("parsed %s: %d nodes", path, len(tree))
    return tree


def read_upload(file):
    """
    อ่านต้นไม้จากไฟล์ที่อัปโหลดผ่าน Flask

    Args:
        file: werkzeug FileStorage

    Returns:
        WeightedTree: ต้นไม้ที่ normalize แล้ว

    Raises:
        ParseError: ถ้าไม่พบไฟล์หรือนามสกุลไม่ได้รับอนุญาต
    """
    if not file or file.filename == "":
        raise ParseError("ไม่พบไฟล์")
    filename = secure_filename(file.filename)
    if not allowed_file(filename):
        raise ParseError("นามสกุลไฟล์ไม่ได้รับอนุญาต (ใช้ .json หรือ .csv)", filename)
    try:
        text = file.read().decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError("ไฟล์ต้องเป็น UTF-8", filename) from exc
    return parse_tree_text(text, get_file_extension(filename), filename)


# ---- การเขียนต้นไม้ ----

def tree_to_dict(tree: WeightedTree):
    """เอกสารลำดับชั้นของต้นไม้ (ชื่อของโหนดคือส่วนสุดท้ายของ id)"""
    def build(node_id):
        node = tree.node(node_id)
        doc = {"name": node_id.rsplit(PATH_SEPARATOR, 1)[-1], "weight": node.weight}
        if node.children:
            doc["children"] = [build(c) for c in node.children]
        return doc

    return build(tree.root)


def tree_to_csv(tree: WeightedTree):
    """แถว path,weight ของใบทุกใบเรียงแบบ preorder"""
    rows = [{"path": leaf, "weight": repr(tree.weight(leaf))} for leaf in tree.leaves()]
    return generate_csv(rows, ["path", "weight"])


def write_tree(tree: WeightedTree, path):
    """เขียนต้นไม้เป็น CSV ถ้านามสกุลเป็น .csv นอกนั้นเป็นเอกสารลำดับชั้น JSON"""
    if str(path).lower().endswith(".csv"):
        _write_text(path, tree_to_csv(tree))
    else:
        _write_text(path, to_json(tree_to_dict(tree)))


# ---- ไฟล์บันทึก layout ----

def layout_to_dict(layout: Layout):
    return {
        "algorithm": layout.algorithm,
        "regions": [layout.regions[k].to_record() for k in sorted(layout.regions)],
        "stats": layout.stats,
    }


def layout_from_dict(document, source="<memory>") -> Layout:
    """
    แปลงไฟล์บันทึก layout กลับเป็น Layout (คำนวณชนิดรูปและอัตราส่วนใหม่จากจุดยอด)

    Raises:
        ParseError: ถ้าโครงสร้างเอกสารไม่ถูกต้อง
        MalformedRegion: ถ้าจุดยอดของพื้นที่ใดไม่เป็นรูปหลายเหลี่ยมที่มีพื้นที่
    """
    if not isinstance(document, dict) or not isinstance(document.get("regions"), list):
        raise ParseError("ไฟล์ layout ต้องเป็น object ที่มี regions", source)
    regions = {}
    for index, record in enumerate(document["regions"]):
        line, position = _location(record)
        if not isinstance(record, dict) or not isinstance(record.get("node"), str):
            raise ParseError(f"record ที่ {index} ต้องมี node", source, line, position)
        node_id = record["node"]
        vertices = record.get("vertices")
        try:
            points = [(float(x), float(y)) for x, y in vertices]
        except (TypeError, ValueError) as exc:
            raise ParseError(f"จุดยอดของ '{node_id}' ไม่ถูกต้อง", source, line, position) from exc
        try:
            regions[node_id] = Region.build(
                node_id, points, float(record.get("weight", 0.0)),
                int(record.get("depth", 0)), bool(record.get("leaf", False)),
            )
        except GeometryError as exc:
            raise MalformedRegion(f"พื้นที่ของโหนด '{node_id}' ไม่สมบูรณ์: {exc.message}",
                                  node_id=node_id) from exc
    return Layout(str(document.get("algorithm", "")), regions, document.get("stats") or {})


def write_layout(layout: Layout, path):
    _write_text(path, to_json(layout_to_dict(layout)))


def read_layout(path) -> Layout:
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except (OSError, UnicodeDecodeError) as exc:
        raise ParseError(f"อ่านไฟล์ไม่ได้: {exc}", str(path)) from exc
    return layout_from_dict(_loads_located(text, str(path)), str(path))


def _write_text(path, text):
    folder = os.path.dirname(os.fspath(path))
    if folder:
        os.makedirs(folder, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as handle:
        handle.write(text)
