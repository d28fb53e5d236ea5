import numpy as np, sys
exec(open('/tmp/vn4.py').read().split('import sys')[0])
for tr in (1.5, 2.0, 3.0, 5.0):
    for lam in (1.0, 0.5, 2.0):
        worst = 0; wk = None
        N = 40
        for mx in range(N):
            for my in range(N):
                if mx == my == 0: continue
                g = growth(2*np.pi*mx/(N*0.025), 2*np.pi*my/(N*0.025), tr, lam, 1.0, 1.0)
                if g > worst: worst, wk = g, (mx,my)
        print('theta=1 lam=%.2f tau=%.2f: max|G| = %.8f at k*dx=(%.2f,%.2f)pi'
              % (lam, tr, worst, 2*wk[0]/N, 2*wk[1]/N))
