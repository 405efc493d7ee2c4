// planted: lock line 43: variable sessions accessed without lock &sess_lock held
// Session count is protected by sess_lock except during teardown.

struct mutex sess_lock;
int sessions;
int peak;

void sess_open(void)
{
	mutex_lock(&sess_lock);
	sessions = sessions + 1;
	if (sessions > peak)
		peak = sessions;
	mutex_unlock(&sess_lock);
}

void sess_close(void)
{
	mutex_lock(&sess_lock);
	sessions = sessions - 1;
	mutex_unlock(&sess_lock);
}

void sess_adopt(int n)
{
	mutex_lock(&sess_lock);
	sessions = sessions + n;
	mutex_unlock(&sess_lock);
}

void sess_drop(int n)
{
	mutex_lock(&sess_lock);
	sessions = sessions - n;
	mutex_unlock(&sess_lock);
}

void sess_teardown(void)
{
	mutex_lock(&sess_lock);
	peak = 0;
	mutex_unlock(&sess_lock);
	sessions = 0;
}
