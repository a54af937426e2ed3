import os

# two sweep workers halve the one-time order-9 enumeration; results are
# merged deterministically so the worker count never changes any output
os.environ.setdefault("TREEWALK_THREADS", "2")
