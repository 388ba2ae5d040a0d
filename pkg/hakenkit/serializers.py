from typing import cast

from rest_framework.request import Request
from rest_framework.serializers import (
    HyperlinkedModelSerializer,
    SerializerMethodField,
)

from hakenkit.diagram import crossing_measure, serialize_diagram
from hakenkit.models import Certificate, Diagram


class HakenkitHyperlinkedModelSerializer(HyperlinkedModelSerializer):
    @property
    def request(self) -> Request:
        return cast(Request, self.context['request'])


class DiagramSerializer(HakenkitHyperlinkedModelSerializer):
    url_field_name = 'url_'
    crossing_measure = SerializerMethodField()

    def get_crossing_measure(self, obj: Diagram) -> int:
        return crossing_measure(obj.load())

    canonical_source = SerializerMethodField()

    def get_canonical_source(self, obj: Diagram) -> str:
        return serialize_diagram(obj.load())

    class Meta:
        model = Diagram
        fields = '__all__'


class CertificateSerializer(HakenkitHyperlinkedModelSerializer):
    url_field_name = 'url_'

    class Meta:
        model = Certificate
        fields = '__all__'
