from hakenkit.management.base import RunCommand


class Command(RunCommand):
    help = 'Dumps the marked complement triangulation of a diagram.'
    command = 'triangulate'
