# bounded_treemaps/models/errors.py
"""
ข้อผิดพลาดทั้งหมดของระบบจัดวาง treemap

ทุกคลาสสืบทอดจาก TreemapError เพื่อให้ชั้น routes และ CLI
ดักจับได้ในที่เดียว แล้วแปลงเป็น {"error": ...} หรือ exit code
"""


class TreemapError(Exception):
    """
    คลาสพื้นฐานของข้อผิดพลาดในระบบ
    """
    def __init__(self, message, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self):
        """
        แปลงข้อผิดพลาดเป็น dict สำหรับส่งกลับทาง API

        Returns:
            dict: ข้อความและรายละเอียดของข้อผิดพลาด
        """
        data = {"error": self.message, "type": type(self).__name__}
        if self.details:
            data["details"] = {k: _plain(v) for k, v in self.details.items()}
        return data


def _plain(value):
    if isinstance(value, (str, int, float, bool)) or value is None:
        return value
    return str(value)


# ---- tree ----

class TreeError(TreemapError):
    pass


class NonPositiveLeafWeight(TreeError):
    def __init__(self, node_id, weight, source=None, line=None):
        where = f" ({source}:{line})" if source and line else ""
        super().__init__(
            f"น้ำหนักของใบ '{node_id}' ต้องเป็นบวก แต่ได้ {weight}{where}",
            node_id=node_id, weight=weight, source=source, line=line,
        )
        self.node_id = node_id
        self.weight = weight
        self.source = source
        self.line = line


class InconsistentInternalWeight(TreeError):
    def __init__(self, node_id, supplied, computed):
        super().__init__(
            f"น้ำหนักของโหนด '{node_id}' ({supplied}) ไม่เท่ากับผลรวมของลูก ({computed})",
            node_id=node_id, supplied=supplied, computed=computed,
        )
        self.node_id = node_id


class MalformedTree(TreeError):
    pass


class DomainError(TreeError):
    pass


# ---- geometry ----

class GeometryError(TreemapError):
    pass


class DegeneratePolygon(GeometryError):
    pass


class NotOrthoconvex(GeometryError):
    pass


class NoIntersection(GeometryError):
    pass


# ---- partition ----

class PartitionError(TreemapError):
    pass


class TooFewItems(PartitionError):
    pass


class BadWeights(PartitionError):
    pass


class FractionOutOfRange(PartitionError):
    def __init__(self, fraction):
        super().__init__(
            f"สัดส่วนการตัด {fraction:.6g} อยู่นอกช่วง [1/3, 2/3]",
            fraction=fraction,
        )
        self.fraction = fraction


# ---- layouts ----

class LayoutError(TreemapError):
    pass


class CasePreconditionViolated(LayoutError):
    pass


class SearchFailed(LayoutError):
    pass


class FragmentedRegion(LayoutError):
    pass


class EmptyInstance(LayoutError):
    pass


class DepthTooLarge(LayoutError):
    pass


# ---- square packing ----

class PackingError(TreemapError):
    pass


class Overfull(PackingError):
    pass


class TooLarge(PackingError):
    pass


# ---- verifier ----

class VerificationError(TreemapError):
    pass


class MissingRegion(VerificationError):
    pass


class MalformedRegion(VerificationError):
    pass


# ---- io ----

class InputError(TreemapError):
    pass


class ParseError(InputError):
    def __init__(self, message, source=None, line=None, position=None):
        where = ""
        if source is not None:
            where = f" [{source}"
            if line is not None:
                where += f":{line}"
                if position is not None:
                    where += f":{position}"
            where += "]"
        super().__init__(message + where, source=source, line=line, position=position)
        self.source = source
        self.line = line
        self.position = position


class BadSpec(InputError):
    pass
