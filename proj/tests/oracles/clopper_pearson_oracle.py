"""Reference Clopper-Pearson bounds at 50 digits (mpmath).

Uses the binomial-tail identity I_x(a, b) = P[Bin(a+b-1, x) >= a] for integer
a, b and bisects on x. Output feeds the frozen table in binomial_test.cpp.
"""
import mpmath as mp
mp.mp.dps=50
def I(x,a,b):
    # I_x(a,b) = P[Bin(a+b-1, x) >= a] for integer a,b
    n=a+b-1
    lx,l1=mp.log(x),mp.log(1-x)
    s=mp.mpf(0)
    for j in range(a,n+1):
        s+=mp.exp(mp.loggamma(n+1)-mp.loggamma(j+1)-mp.loggamma(n-j+1)+j*lx+(n-j)*l1)
    return s
def binv(p,a,b):
    lo,hi=mp.mpf(0),mp.mpf(1)
    for _ in range(110):
        m=(lo+hi)/2
        if I(m,a,b)<p: lo=m
        else: hi=m
    return (lo+hi)/2
def cp(k,n,c):
    al=1-mp.mpf(c)
    lo=mp.mpf(0) if k==0 else binv(al/2,k,n-k+1)
    hi=mp.mpf(1) if k==n else binv(1-al/2,k+1,n-k)
    return lo,hi
for k,n,c in [(5144,10000,'0.95'),(1,10,'0.95'),(0,10,'0.95'),(10,10,'0.95'),(1310,10000,'0.95'),(7,20,'0.95'),(5,50,'0.9')]:
    lo,hi=cp(k,n,c); print(k,n,c,mp.nstr(lo,16),mp.nstr(hi,16))
