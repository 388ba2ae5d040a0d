from django.apps import AppConfig


class HakenkitConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'hakenkit'
    verbose_name = 'Hakenkit'
