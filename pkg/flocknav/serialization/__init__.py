from ._csv import CsvSerializer
from ._generic import DataFrameSerializer

DataFrameSerializer.register_serializer(".csv.gz", CsvSerializer)
DataFrameSerializer.register_serializer(".csv", CsvSerializer)


def default_serializer():
    return CsvSerializer()


__all__ = ["DataFrameSerializer", "CsvSerializer", "default_serializer"]
