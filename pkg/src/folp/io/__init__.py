"""IO - MPS 读写与结果文件"""

from folp.io.mps import parse_mps, read_mps, write_mps
from folp.io.results import read_result, read_vector, summary_dict, write_result

__all__ = [
    "parse_mps",
    "read_mps",
    "read_result",
    "read_vector",
    "summary_dict",
    "write_mps",
    "write_result",
]
