// planted: automaton line 20: lock &slot->ctrl->crit_sect held at exit
// Early return on the rate-limit check leaves crit_sect locked.

static const int EINVAL = 22;

struct controller {
	int crit_sect;
};

struct slot {
	struct controller *ctrl;
	int last_emi_toggle;
};

static int set_lock_status(struct slot *slot, int status)
{
	mutex_lock(&slot->ctrl->crit_sect);
	/* has it been >1 sec since our last toggle? */
	if ((get_seconds() - slot->last_emi_toggle) < 1)
		return -EINVAL;
	slot->last_emi_toggle = get_seconds();
	set_status(slot, status);
	mutex_unlock(&slot->ctrl->crit_sect);
	return 0;
}
