import uuid

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='ExperimentRun',
            fields=[
                ('created_at', models.DateTimeField(auto_now_add=True)),
                ('updated_at', models.DateTimeField(auto_now=True)),
                ('id', models.UUIDField(default=uuid.uuid4, editable=False, primary_key=True, serialize=False)),
                ('command', models.CharField(max_length=50)),
                ('parameters', models.JSONField(default=dict)),
                ('status', models.CharField(choices=[('OK', 'Completed'), ('INPUT_ERROR', 'Rejected input'), ('VERIFICATION_FAILED', 'Invariant violated')], max_length=32)),
                ('exit_code', models.PositiveSmallIntegerField(default=0)),
                ('result', models.JSONField(blank=True, null=True)),
                ('result_digest', models.CharField(blank=True, default='', max_length=64)),
                ('summary', models.TextField(blank=True, default='')),
            ],
            options={
                'ordering': ['-created_at'],
                'indexes': [
                    models.Index(fields=['command'], name='run_command_idx'),
                    models.Index(fields=['command', 'created_at'], name='run_command_created_idx'),
                ],
            },
        ),
    ]
