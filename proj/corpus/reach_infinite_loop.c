// planted: reach line 19: unreachable code in poll_device
// The loop has no exit, so the trailing statements are dead.

int status;

void service(void)
{
	status = 0;
}

int poll_device(void)
{
	int spins = 0;

	while (1) {
		spins = spins + 1;
		service();
	}
	status = spins;
	return spins;
}
