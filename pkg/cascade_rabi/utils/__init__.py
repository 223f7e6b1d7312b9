from .formatting import (
    CSV_HEADER,
    format_csv,
    format_json,
    format_number,
    parse_csv,
    trace_document,
    trace_from_csv,
)
from .grid import (
    coherent_grid,
    quantized_grid,
    semiclassical_grid,
    uniform_grid,
    validate_grid,
)
