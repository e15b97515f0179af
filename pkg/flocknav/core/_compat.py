# -*- coding: utf-8 -*-


import simplejson


def load_json(buf, **kwargs):
    """
    Load JSON from str or bytes.
    """
    if isinstance(buf, bytes):
        return simplejson.loads(buf.decode("utf-8"), **kwargs)
    else:
        return simplejson.loads(buf, **kwargs)


def dump_json(obj, **kwargs):
    """
    Serialize ``obj`` to UTF-8 encoded JSON bytes.

    Floats are written with ``repr`` which keeps 17 significant digits.
    """
    return simplejson.dumps(obj, **kwargs).encode("utf-8")
