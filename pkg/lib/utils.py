import functools
import json

import numpy as np
from flask import Response, request


class HelperEncoder(json.JSONEncoder):
    def default(self, o):
        if isinstance(o, (complex, np.complexfloating)):
            return [float(o.real), float(o.imag)]
        if isinstance(o, np.integer):
            return int(o)
        if isinstance(o, np.floating):
            return float(o)
        if isinstance(o, np.bool_):
            return bool(o)
        if isinstance(o, np.ndarray):
            return o.tolist()
        return super().default(o)


def jsonify(data, status=200):
    """
    Like flask.jsonify, but handles numerical objects (numpy scalars/arrays, complex numbers).

    complex -> [re, im]
    ndarray -> nested lists
    """
    return Response(json.dumps(data, cls=HelperEncoder), status=status, mimetype="application/json")


def success(data, status=200):
    return jsonify({"success": True, "data": data}, status)


def error(status: int, message: str = None):
    return jsonify({"success": False, "error": message}, status)


def expect_json(func):
    """
    Returns a wrapper that enforces the presence of a JSON object body.
    Passes the JSON body as the first argument to the inner.

    If the body is missing or is not an object, returns 400.
    """

    @functools.wraps(func)
    def inner(*args, **kwargs):
        # ensure correct mimetype
        if not request.is_json:
            return error(400, "expected json body")

        # ensure body exists
        body = request.get_json(silent=True)  # return None on error
        if body is None:
            return error(400, "missing or invalid body")
        if not isinstance(body, dict):
            return error(400, "expected body to be an object")

        return func(body, *args, **kwargs)

    return inner
