"""Exception types shared across the package.

DomainError: a mathematically invalid input (non-monic polynomial where a monic
one is required, zero constant term, reducible input to an irreducible-only
operation, ...).  CLI maps these to exit status 2.

ConfigError: a session/ambient violation (degree does not divide the ambient N,
mixing values from different cyclotomic fields, a non-primitive override
polynomial, field larger than the scan bound).  Also exit status 2.

BudgetError: an enumeration oracle refused to run because the group is larger
than the configured budget.  The message always carries the exact group order.
"""


class DomainError(ValueError):
    pass


class ConfigError(ValueError):
    pass


class BudgetError(RuntimeError):
    def __init__(self, message, required, budget):
        super().__init__(message)
        self.required = required
        self.budget = budget
