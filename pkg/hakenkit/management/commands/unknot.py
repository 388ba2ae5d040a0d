from hakenkit.management.base import RunCommand


class Command(RunCommand):
    help = 'Decides whether a knot diagram represents the unknot.'
    command = 'unknot'
