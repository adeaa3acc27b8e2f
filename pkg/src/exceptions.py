class FermiRMTError(Exception):
    '''
    Base class for every error raised by the fermi_rmt package.
    '''


class DomainError(FermiRMTError, ValueError):
    '''
    An argument lies outside the domain of the requested operation.
    '''


class UnsupportedDifferenceError(DomainError):
    '''
    A closed form was requested for a dimension difference a = n - m that has none.
    '''


class InsufficientDataError(FermiRMTError, ValueError):
    '''
    Too few samples to form the requested batch-means estimate.
    '''


class ConvergenceError(FermiRMTError, RuntimeError):
    '''
    An iterative computation did not reach its tolerance.

    :param message: Human-readable description.
    :param last_estimate: Best value available when the iteration stopped.
    :param err_estimate: Error estimate that accompanied last_estimate.
    '''
    def __init__(self, message, last_estimate=None, err_estimate=None):
        super().__init__(message)
        self.last_estimate = last_estimate
        self.err_estimate = err_estimate


class IntegrityError(FermiRMTError, RuntimeError):
    '''
    A numerical invariant was violated beyond tolerance (e.g. unpaired singular values).
    '''


class ConfigError(FermiRMTError, ValueError):
    '''
    Malformed sweep configuration.

    :param message: Description of the problem.
    :param line: 1-based line number in the configuration file, if known.
    :param field: Name of the offending key, if known.
    '''
    def __init__(self, message, line=None, field=None):
        location = []
        if line is not None:
            location.append("line %d" % line)
        if field is not None:
            location.append("field '%s'" % field)
        if location:
            message = "%s (%s)" % (message, ", ".join(location))
        super().__init__(message)
        self.line = line
        self.field = field
