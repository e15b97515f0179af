# -*- coding: utf-8 -*-
"""
Exceptions raised by flocknav.
"""


class MapParseError(ValueError):
    """
    A map or scenario document could not be parsed.
    """


class MapValidationError(ValueError):
    """
    A semantic map violates one of its structural rules.

    Parameters
    ----------
    violations: list of tuple(str, str, str)
        ``(node_id, rule, message)`` for every violation found. The first entry
        determines :attr:`node_id` and :attr:`rule`.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        node_id, rule, message = self.violations[0]
        self.node_id = node_id
        self.rule = rule
        text = "; ".join(
            "[{}] {}: {}".format(rule_, node_, msg_)
            for node_, rule_, msg_ in self.violations
        )
        super(MapValidationError, self).__init__(text)


class RouteError(ValueError):
    """
    A route is not traversable in the map or a mode index is out of range.
    """


class SamplingError(RuntimeError):
    """
    No collision free start pose could be drawn.
    """


class ProblemDimensionError(ValueError):
    """
    A decision vector does not match the problem it is used with.
    """
