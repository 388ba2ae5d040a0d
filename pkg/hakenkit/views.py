from typing import Any

from django.http import JsonResponse
from django.views.generic import DetailView
from rest_framework.viewsets import ModelViewSet

from hakenkit.diagram import is_knot_diagram, serialize_diagram
from hakenkit.invariants import (
    alexander_genus_bound,
    crossing_signs,
    linking_number,
    seifert_genus_bound,
)
from hakenkit.models import Certificate, Diagram
from hakenkit.serializers import CertificateSerializer, DiagramSerializer


class DiagramViewSet(ModelViewSet):  # type: ignore[type-arg]
    queryset = Diagram.objects.all()
    serializer_class = DiagramSerializer


class CertificateViewSet(ModelViewSet):  # type: ignore[type-arg]
    queryset = Certificate.objects.all()
    serializer_class = CertificateSerializer


class DiagramInvariantsView(DetailView):  # type: ignore[type-arg]
    model = Diagram

    def render_to_response(
            self,
            context: dict[str, Any],
            **response_kwargs: Any,
    ) -> JsonResponse:
        diagram = self.object.load()
        invariants: dict[str, Any] = {
            'canonical_source': serialize_diagram(diagram),
            'components': diagram.components,
            'crossing_signs': list(crossing_signs(diagram)),
        }

        if is_knot_diagram(diagram):
            invariants['genus_bounds'] = {
                'lower': alexander_genus_bound(diagram),
                'upper': seifert_genus_bound(diagram),
            }
        elif diagram.components == 2:
            invariants['linking_number'] = linking_number(diagram)

        return JsonResponse(invariants)
