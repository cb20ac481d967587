import contextlib
import json
import sys

import numpy as np
import pandas as pd


@contextlib.contextmanager
def open_output(filename):
    if filename is None:
        yield sys.stdout
    else:
        with open(filename, 'w') as f:
            yield f


def json_safe(value):
    """ Replace non-finite floats with None, recursively.
    """
    if isinstance(value, dict):
        return dict((k, json_safe(v)) for k, v in value.items())
    if isinstance(value, (list, tuple)):
        return [json_safe(v) for v in value]
    if isinstance(value, (float, np.floating)):
        if not np.isfinite(value):
            return None
        return float(value)
    if isinstance(value, np.integer):
        return int(value)
    if isinstance(value, np.bool_):
        return bool(value)
    return value


def write_records(records, output_format, filename=None):
    """ Write a list of dicts, one JSON object per line, or as a table.
    """
    if output_format == 'json':
        with open_output(filename) as f:
            for record in records:
                f.write(json.dumps(json_safe(record)) + '\n')
    else:
        write_table(pd.DataFrame(records), output_format, filename=filename)


def write_table(table, output_format, filename=None):
    """ Write a pandas table as text, csv with header row, or json lines.
    """
    with open_output(filename) as f:
        if output_format == 'csv':
            table.to_csv(f, index=False)
        elif output_format == 'json':
            for record in table.to_dict(orient='records'):
                f.write(json.dumps(json_safe(record)) + '\n')
        else:
            f.write(table.to_string(index=False, float_format=repr) + '\n')


def complex_row(value):
    value = complex(value)
    return {'re': value.real, 'im': value.imag}
