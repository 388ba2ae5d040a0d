from hakenkit.management.base import RunCommand


class Command(RunCommand):
    help = 'Decides whether a link diagram represents a splittable link.'
    command = 'split'
