from hakenkit.management.base import RunCommand


class Command(RunCommand):
    help = 'Computes the genus of the knot of a diagram.'
    command = 'genus'
