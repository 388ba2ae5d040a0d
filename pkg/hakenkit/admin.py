from django.contrib import admin

from hakenkit.models import Certificate, Diagram

admin.site.register(Certificate)
admin.site.register(Diagram)
