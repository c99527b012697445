# bounded_treemaps/utils/helpers.py
import csv
import io
import json


def to_json(data):
    """
    แปลงข้อมูลเป็น JSON string ที่เหมือนเดิมทุกไบต์สำหรับข้อมูลเดียวกัน

    ลำดับคีย์เป็นไปตามลำดับที่ใส่ ค่า NaN/inf ไม่อนุญาต

    Args:
        data: ข้อมูลที่ต้องการแปลง

    Returns:
        str: JSON string ที่ลงท้ายด้วยขึ้นบรรทัดใหม่
    """
    return json.dumps(data, ensure_ascii=False, indent=2, allow_nan=False) + "\n"


def generate_csv(data, headers):
    """
    สร้าง CSV จากรายการ dict

    Args:
        data (list): รายการข้อมูล
        headers (list): รายการหัวข้อ

    Returns:
        str: ข้อความ CSV
    """
    output = io.StringIO()
    writer = csv.writer(output, lineterminator="\n")
    writer.writerow(headers)
    for row in data:
        writer.writerow([row.get(header, "") for header in headers])
    return output.getvalue()
