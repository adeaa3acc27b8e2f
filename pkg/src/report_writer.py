import csv
import json
import logging
import math
import sys
from contextlib import contextmanager


def format_value(value):
    '''
    Serialise one CSV cell; floats use 17 significant digits.
    '''
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        return "%.17g" % value
    return str(value)


@contextmanager
def _open_output(path):
    if path is None or path == "-":
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8", newline="") as handle:
            yield handle


def write_csv(path, columns, rows, meta):
    '''
    Write a CSV table preceded by a `# meta:` comment block.

    :param path: Output path, or None / "-" for stdout.
    :param columns: Header names.
    :param rows: Iterable of sequences aligned with columns.
    :param meta: Dict of metadata written as `# meta: key=value` lines in key order.
    :return: Number of data rows written.
    '''
    count = 0
    with _open_output(path) as handle:
        for key in sorted(meta):
            handle.write("# meta: %s=%s\n" % (key, format_value(meta[key])))
        writer = csv.writer(handle, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([format_value(value) for value in row])
            count += 1
    logging.getLogger("fermi_rmt").info("Wrote %d CSV rows to %s.", count, path or "stdout")
    return count


def _json_safe(value):
    if isinstance(value, float) and not math.isfinite(value):
        return str(value)
    if isinstance(value, dict):
        return {key: _json_safe(item) for key, item in value.items()}
    if isinstance(value, (list, tuple)):
        return [_json_safe(item) for item in value]
    return value


def write_json(path, payload):
    '''
    Write a JSON document (verification reports, single records).

    :param path: Output path, or None / "-" for stdout.
    :param payload: JSON-serialisable object; non-finite floats become strings.
    '''
    with _open_output(path) as handle:
        json.dump(_json_safe(payload), handle, indent=2, ensure_ascii=False)
        handle.write("\n")
    logging.getLogger("fermi_rmt").info("Wrote JSON output to %s.", path or "stdout")
