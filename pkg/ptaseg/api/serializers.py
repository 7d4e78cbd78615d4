"""
Serializers for the JSON reports written by the command-line tools.

Reports are read-only views of the result objects; every top-level report
carries ``schema_version``.
"""

from collections import OrderedDict
import logging
import math

from django.conf import settings
from rest_framework import fields, serializers


log = logging.getLogger(__name__)


###############
# Custom Fields
###############
class CappedFloatField(fields.FloatField):
    """
    Float rendered within ``[-1/epsilon, 1/epsilon]``.

    Infinite statistics (constant bands with different means) are not valid
    JSON, so they are written at the cap. ``epsilon`` is taken from the
    serializer context, falling back to ``settings.PTASEG_EPSILON``.
    """
    def to_representation(self, value):
        if value is None:
            return None
        value = float(value)
        if math.isnan(value):
            return None
        epsilon = self.context.get('epsilon', settings.PTASEG_EPSILON)
        cap = 1.0 / epsilon
        return max(-cap, min(cap, value))


class LabelKeyedField(fields.Field):
    """Dict keyed by class label, rendered with string keys in label order."""
    def __init__(self, child=None, **kwargs):
        self.child = child
        kwargs['read_only'] = True
        super(LabelKeyedField, self).__init__(**kwargs)

    def to_representation(self, value):
        out = OrderedDict()
        for label in sorted(value):
            item = value[label]
            if self.child is not None and item is not None:
                item = type(self.child)(item, context=self.context).data
            out[str(label)] = item
        return out


###################
# Base Serializer #
###################
class ReportSerializer(serializers.Serializer):
    """Base for top-level reports."""
    schema_version = serializers.SerializerMethodField()

    def get_schema_version(self, obj):
        return settings.PTASEG_SCHEMA_VERSION


########
# Config
########
class PtaConfigSerializer(serializers.Serializer):
    lam = serializers.FloatField()
    sectors = serializers.IntegerField()
    band_width = serializers.FloatField()
    threshold = serializers.FloatField()
    epsilon = serializers.FloatField()
    mode = serializers.CharField()
    prob_min = serializers.FloatField()


class SyntheticSpecSerializer(serializers.Serializer):
    size = serializers.IntegerField()
    rect = serializers.ListField(child=serializers.IntegerField())
    mean_inside = serializers.FloatField()
    sigma_inside = serializers.FloatField()
    mean_outside = serializers.FloatField()
    sigma_outside = serializers.FloatField()
    seed = serializers.IntegerField()
    replicates = serializers.IntegerField()
    offset = serializers.IntegerField()
    shift = serializers.IntegerField()


######
# Loss
######
class SectorStatisticSerializer(serializers.Serializer):
    index = serializers.IntegerField()
    t = CappedFloatField(allow_null=True)
    v = serializers.FloatField(allow_null=True)
    n_plus = serializers.IntegerField()
    n_minus = serializers.IntegerField()
    valid = serializers.BooleanField()
    loss = CappedFloatField(allow_null=True)


class PiecewiseLossReportSerializer(serializers.Serializer):
    mode = serializers.CharField()
    aggregate = CappedFloatField()
    skipped = serializers.IntegerField()
    per_sector = SectorStatisticSerializer(many=True)


class LossReportSerializer(ReportSerializer):
    """
    Base loss, piecewise term and total, with the configuration used.
    """
    base_name = serializers.CharField()
    base = serializers.FloatField()
    lam = serializers.FloatField()
    l_pt = CappedFloatField(allow_null=True)
    total = CappedFloatField(allow_null=True)
    available = serializers.BooleanField()
    degenerate = serializers.CharField(allow_null=True)
    per_class = LabelKeyedField(child=PiecewiseLossReportSerializer())
    config = PtaConfigSerializer()


#########
# Metrics
#########
class MetricsReportSerializer(ReportSerializer):
    """Per-class metrics and macro averages; distances are in pixels."""
    per_class = LabelKeyedField()
    macro = serializers.DictField()
    units = serializers.SerializerMethodField()

    def get_units(self, obj):
        return 'pixels'


############
# Simulation
############
class SimulationSummarySerializer(ReportSerializer):
    spec = SyntheticSpecSerializer()
    config = PtaConfigSerializer()
    summary = serializers.DictField()
