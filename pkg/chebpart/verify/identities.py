from chebpart.cheb import IdentityRange, cheb_coeffs, identity_names, verify_identity
from chebpart.const import Suite
from chebpart.lib.exceptions import IdentityViolation
from chebpart.systemdata import chebyshev_table, params_panel
from chebpart.verify import VerificationSuite


class IdentitiesSuite(VerificationSuite):
    """Every registered identity under exact arithmetic, and the reference
    table of C_n and U_n."""

    suite = Suite.IDENTITIES

    def exec(self):
        ranges = IdentityRange.sampled()
        ranges.params += params_panel()
        for name in identity_names():
            try:
                self.report.instances += verify_identity(name, ranges).instances
            except IdentityViolation as e:
                self.report.instances += 1
                self.report.violations += [{'check': name} | e.instance]

        for kind, rows in chebyshev_table().items():
            for n, text in rows.items():
                self.check('reference table', {'kind': kind.value, 'n': n}, str(cheb_coeffs(kind, n)) == text)
