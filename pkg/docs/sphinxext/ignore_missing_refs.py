# -*- coding: utf-8 -*-
"""
Resolve references to third party and private objects to a dummy link so that
``nitpicky`` only reports broken references into the public flocknav API.
"""
from docutils import nodes

PACKAGES = ["flocknav"]


def _is_external_target(target):
    return not any(target == p or target.startswith(p + ".") for p in PACKAGES)


def _is_private_target(target):
    return any(part.startswith("_") for part in target.split("."))


def missing_reference(app, env, node, contnode):
    target = node["reftarget"]
    if not (_is_external_target(target) or _is_private_target(target)):
        return None
    newnode = nodes.reference("", "", internal=False, refuri="#", reftitle="")
    newnode.append(contnode)
    return newnode


def setup(app):
    app.connect("missing-reference", missing_reference)
    return {"version": "0.1", "parallel_read_safe": True}
