"""A multicast code on the butterfly turns into a sum code on its reverse."""

from sumnet import catalog
from sumnet.codec import dumps_code, verify_linear
from sumnet.duality import dual_code
from sumnet.schemes import scheme_multicast

net = catalog.butterfly()
multicast = scheme_multicast(net, "s", 2, "gf2")
print(f"multicast ({multicast.k},{multicast.l}) on butterfly: {verify_linear(net, multicast)}")

rev = catalog.reverse_butterfly()
sum_code = dual_code(net, multicast)
print(f"dual ({sum_code.k},{sum_code.l}) on {rev.name}: {verify_linear(rev, sum_code)}")
print(dumps_code(sum_code))
