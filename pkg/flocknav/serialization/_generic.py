# -*- coding: utf-8 -*-
"""
Persisting trajectory frames and other DataFrames in a simplekv store.
"""


class DataFrameSerializer(object):
    """
    Base class of the DataFrame formats.

    Every concrete format registers itself for the key suffixes it writes;
    :meth:`restore_dataframe` dispatches on the suffix of the key.
    """

    _serializers = {}

    def __ne__(self, other):
        return not (self == other)

    @classmethod
    def register_serializer(cls, suffix, serializer):
        if not suffix.startswith("."):
            raise ValueError("Suffix must start with a dot, got {!r}".format(suffix))
        cls._serializers[suffix] = serializer

    @classmethod
    def serializer_for_key(cls, key):
        """
        The registered format of ``key``; the longest matching suffix wins.

        Raises
        ------
        ValueError
            No format is registered for the suffix of ``key``.
        """
        for suffix in sorted(cls._serializers, key=len, reverse=True):
            if key.endswith(suffix):
                return cls._serializers[suffix]
        raise ValueError(
            "The specified file format for '{}' is not supported".format(key)
        )

    @classmethod
    def restore_dataframe(cls, store, key, columns=None):
        """
        Load the DataFrame stored under ``key``.

        Parameters
        ----------
        store: simplekv.KeyValueStore
        key: str
            Full key including the format suffix, e.g. ``trajectories/run-000.csv``.
        columns: list of str, optional
            Only return these columns.

        Returns
        -------
        pandas.DataFrame
        """
        return cls.serializer_for_key(key).restore_dataframe(
            store, key, columns=columns
        )

    def store(self, store, key_prefix, df):
        """
        Persist ``df`` under ``key_prefix`` plus the format suffix.

        Returns
        -------
        key: str
        """
        raise NotImplementedError("Abstract method called.")
