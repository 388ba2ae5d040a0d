from django.contrib import admin
from django.urls import include, path, URLPattern, URLResolver
from rest_framework.authtoken.views import obtain_auth_token
from rest_framework.routers import DefaultRouter

from hakenkit.apps import HakenkitConfig
from hakenkit.utilities import get_admin, get_auth
from hakenkit.views import (
    CertificateViewSet,
    DiagramInvariantsView,
    DiagramViewSet,
)

app_name: str = HakenkitConfig.name
router: DefaultRouter = DefaultRouter()

router.register('diagrams', DiagramViewSet)
router.register('certificates', CertificateViewSet)

urlpatterns: list[URLPattern | URLResolver] = [
    path('', include(router.urls)),
    path(
        'diagrams/<int:pk>/invariants/',
        DiagramInvariantsView.as_view(),
        name='diagram_invariants',
    ),
]

if get_auth():
    urlpatterns.append(path('auth/', include('rest_framework.urls')))
    urlpatterns.append(path('auth/token/', obtain_auth_token))

if get_admin():
    urlpatterns.append(path('admin/', admin.site.urls))
