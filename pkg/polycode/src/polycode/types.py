from typing import Any, Dict, Tuple

JSON = Dict[str, Any]
Point = Tuple[int, ...]
Vector = Tuple[int, ...]
