# algebra/rings.py
from abc import ABC, abstractmethod
from dataclasses import dataclass

from algebra.skew_series import SeriesContext, SkewSeries
from algebra.torus import TorusContext, TorusElement
from algebra.xseries import XSeries
from core.qscalar import ONE, QScalar, ZERO


class BaseRing(ABC):
    """
    Coefficient ring of a RingMatrix.

    Elements carry their own +, -, * ; the ring supplies constants and the
    embedding of the central scalars Q(v).
    """

    name: str = "ring"

    @abstractmethod
    def zero(self):
        pass

    @abstractmethod
    def one(self):
        pass

    @abstractmethod
    def from_scalar(self, c: QScalar):
        pass

    def scale(self, x, c: QScalar):
        return x.scale(c)

    def is_zero(self, x) -> bool:
        return x.is_zero()

    def to_text(self, x) -> str:
        return x.to_text()


@dataclass(frozen=True)
class QScalarRing(BaseRing):
    name: str = "Q(v)"

    def zero(self):
        return ZERO

    def one(self):
        return ONE

    def from_scalar(self, c: QScalar):
        return QScalar.coerce(c)

    def scale(self, x, c: QScalar):
        return x * c


@dataclass(frozen=True)
class TorusRing(BaseRing):
    ctx: TorusContext
    name: str = "torus"

    def zero(self):
        return TorusElement.zero(self.ctx)

    def one(self):
        return TorusElement.one(self.ctx)

    def from_scalar(self, c: QScalar):
        return TorusElement.scalar(self.ctx, c)


@dataclass(frozen=True)
class SeriesRing(BaseRing):
    ctx: SeriesContext
    name: str = "skew-series"

    def zero(self):
        return SkewSeries.zero(self.ctx)

    def one(self):
        return SkewSeries.one(self.ctx)

    def from_scalar(self, c: QScalar):
        return SkewSeries.scalar(self.ctx, c)


@dataclass(frozen=True)
class XSeriesRing(BaseRing):
    name: str = "x-series"

    def zero(self):
        return XSeries.zero()

    def one(self):
        return XSeries.one()

    def from_scalar(self, c: QScalar):
        return XSeries.scalar(c)


QSCALARS = QScalarRing()
