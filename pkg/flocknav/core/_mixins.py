# -*- coding: utf-8 -*-


import inspect


class CopyMixin(object):
    """
    Value objects whose constructor arguments are stored as attributes of the
    same name. ``copy`` builds a new, validated instance with some of them
    replaced.
    """

    def copy(self, **kwargs):
        constructor_args = list(inspect.signature(self.__init__).parameters)
        unknown = sorted(set(kwargs) - set(constructor_args))
        if unknown:
            raise ValueError(
                "Cannot copy {} with unknown arguments: {}".format(
                    type(self).__name__, ", ".join(unknown)
                )
            )
        init_args = {
            arg: kwargs[arg] if arg in kwargs else getattr(self, arg, None)
            for arg in constructor_args
        }
        return type(self)(**init_args)
