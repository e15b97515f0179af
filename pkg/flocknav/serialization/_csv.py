# -*- coding: utf-8 -*-
"""
CSV format of the trajectory tables, optionally gzip compressed.
"""

import gzip
from io import BytesIO, StringIO

import pandas as pd
from pandas.errors import EmptyDataError

from ._generic import DataFrameSerializer

FLOAT_FORMAT = "%.15g"


class CsvSerializer(DataFrameSerializer):
    def __init__(self, compress=False, float_format=FLOAT_FORMAT):
        self.compress = compress
        self.float_format = float_format

    def __eq__(self, other):
        return (
            isinstance(other, CsvSerializer)
            and (self.compress == other.compress)
            and (self.float_format == other.float_format)
        )

    def __repr__(self):
        return "CsvSerializer(compress={compress!r}, float_format={fmt!r})".format(
            compress=self.compress, fmt=self.float_format
        )

    @staticmethod
    def restore_dataframe(store, key, columns=None):
        if key.endswith(".csv.gz"):
            compression = "gzip"
        elif key.endswith(".csv"):
            compression = None
        else:
            raise ValueError("Not a CSV key: '{}'".format(key))

        try:
            df = pd.read_csv(
                BytesIO(store.get(key)),
                compression=compression,
                sep=",",
                encoding="utf-8",
                usecols=columns,
            )
            if len(df) == 0:
                # in that case, Pandas decided to use a weird index type, let's fix that
                df.index = pd.RangeIndex(start=0, stop=0, step=1)
        except EmptyDataError:
            df = pd.DataFrame()
        return df

    def store(self, store, key_prefix, df):
        key = "{}.csv".format(key_prefix)
        result_stream = BytesIO()
        if self.compress:
            iostream = gzip.GzipFile(fileobj=result_stream, mode="wb")
            key += ".gz"
        else:
            iostream = result_stream

        unicode_stream = StringIO()
        df.to_csv(
            unicode_stream, index=False, sep=",", float_format=self.float_format
        )
        iostream.write(unicode_stream.getvalue().encode("utf-8"))

        if self.compress:
            iostream.close()
        store.put(key, result_stream.getvalue())
        return key
